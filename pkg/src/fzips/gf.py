"""Finite fields GF(p^k) with the q-power Frobenius.

Elements are handled internally as integer codes: the element
c_0 + c_1 t + ... + c_{k-1} t^{k-1} has code sum(c_i * p**i).  Zero has
code 0 and one has code 1.  `FieldElement` wraps a code for the public API;
the linear algebra layer works on raw codes for speed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

__all__ = [
    "FieldParams",
    "FieldElement",
    "make_field",
    "field_arith",
    "frobenius_q",
    "enumerate_field",
    "is_prime",
]

# fields up to this order get full addition/multiplication tables
_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---- polynomials over GF(p), coefficient lists low degree first ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _polymulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, m, p)


def _polygcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: gcd(f, t^(p^i) - t) = 1 for i <= deg/2."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    cur = x
    for _ in range(k // 2):
        # cur <- cur^p mod f
        res = [1]
        base, e = cur, p
        while e:
            if e & 1:
                res = _polymulmod(res, base, f, p)
            base = _polymulmod(base, base, f, p)
            e >>= 1
        cur = res
        diff = list(cur) + [0] * max(0, 2 - len(cur))
        diff[1] = (diff[1] - 1) % p
        if len(_polygcd(f, diff, p)) > 1:
            return False
    return True


def _canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    # lexicographic in (c_0, c_1, ..., c_{k-1}); product() varies c_0 slowest
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldParams:
    """GF(p^k) viewed over GF(q), q = p^e."""

    p: int
    k: int
    e: int
    modulus: tuple[int, ...] = field(compare=True)

    @property
    def order(self) -> int:
        return self.p ** self.k

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k}, q={self.q})"

    # -- code <-> coefficients --
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for {self}")
        a = 0
        for c in reversed(list(coeffs)):
            if not 0 <= c < self.p:
                raise ValueError(f"coefficient {c} out of range mod {self.p}")
            a = a * self.p + c
        return a

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> GF(p) -> GF(p^k)."""
        return n % self.p

    # -- raw arithmetic on codes --
    def _poly_of(self, a: int) -> list[int]:
        return _trim(list(self.coeffs(a)))

    def _code_of_poly(self, f: Sequence[int]) -> int:
        out = list(f) + [0] * (self.k - len(f))
        return self.code(out[: self.k])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        f = _polymulmod(self._poly_of(a), self._poly_of(b), self.modulus, self.p)
        return self._code_of_poly(f)

    def _slow_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.code([(x + y) % self.p for x, y in zip(ca, cb)])

    def _slow_pow(self, a: int, n: int) -> int:
        res, base = 1, a
        while n:
            if n & 1:
                res = self._slow_mul(res, base)
            base = self._slow_mul(base, base)
            n >>= 1
        return res

    @cached_property
    def _tables(self):
        n = self.order
        if n > _TABLE_LIMIT:
            return None
        p, k = self.p, self.k
        if k == 1:
            add = [[(a + b) % p for b in range(n)] for a in range(n)]
            mul = [[a * b % p for b in range(n)] for a in range(n)]
        else:
            if p == 2:
                add = [[a ^ b for b in range(n)] for a in range(n)]
            else:
                digits = [self.coeffs(a) for a in range(n)]
                weights = [p ** i for i in range(k)]
                add = [[sum((x + y) % p * w for x, y, w in zip(da, db, weights)) for db in digits]
                       for da in digits]
            exp = self._power_list()
            log = {v: i for i, v in enumerate(exp)}
            exp = exp + exp
            mul = [[0] * n] + [[0] + [exp[log[a] + log[b]] for b in range(1, n)] for a in range(1, n)]
        neg = [add[a].index(0) for a in range(n)]
        inv = [0] + [mul[a].index(1) for a in range(1, n)]
        return add, mul, neg, inv

    def _power_list(self) -> list[int]:
        """Successive powers of the first generator of the multiplicative group."""
        for g in range(2, self.order):
            pw, x = [1], g
            while x != 1:
                pw.append(x)
                x = self._slow_mul(x, g)
            if len(pw) == self.order - 1:
                return pw
        raise AssertionError("multiplicative group is not cyclic")

    @cached_property
    def ops(self) -> "_Ops":
        return _Ops(self)

    @cached_property
    def frob_table(self) -> list[int] | None:
        if self.order > _TABLE_LIMIT:
            return None
        return [self._slow_pow(a, self.q) for a in range(self.order)]

    @cached_property
    def frob_inv_table(self) -> list[int] | None:
        t = self.frob_table
        if t is None:
            return None
        inv = [0] * len(t)
        for a, b in enumerate(t):
            inv[b] = a
        return inv

    def frob(self, a: int) -> int:
        t = self.frob_table
        return t[a] if t is not None else self._slow_pow(a, self.q)

    def frob_inv(self, a: int) -> int:
        t = self.frob_inv_table
        if t is not None:
            return t[a]
        # sigma has order k/e on GF(p^k)
        return self._slow_pow(a, self.q ** (self.k // self.e - 1))

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.code(value))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "e": self.e, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(obj: dict) -> "FieldParams":
        f = make_field(int(obj["p"]), int(obj.get("k", 1)), int(obj.get("e", 1)))
        if "modulus" in obj and tuple(obj["modulus"]) != f.modulus:
            raise ValueError(f"non-canonical modulus {obj['modulus']} for {f}")
        return f


class _Ops:
    """Bundle of raw code-level operations, picked for speed."""

    __slots__ = ("add", "sub", "mul", "neg", "inv", "frob", "frob_inv", "p")

    def __init__(self, F: FieldParams):
        p = F.p
        self.p = p
        tables = F._tables
        if F.k == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: a * b % p
            self.neg = lambda a: -a % p
            self.inv = lambda a: pow(a, p - 2, p)
        elif tables is not None:
            add, mul, neg, inv = tables
            self.add = lambda a, b: add[a][b]
            self.sub = lambda a, b: add[a][neg[b]]
            self.mul = lambda a, b: mul[a][b]
            self.neg = neg.__getitem__
            self.inv = inv.__getitem__
        else:
            self.add = F._slow_add
            self.mul = F._slow_mul
            self.neg = lambda a: F._slow_mul(a, F.from_int(-1))
            self.sub = lambda a, b: F._slow_add(a, F._slow_mul(b, F.from_int(-1)))
            self.inv = lambda a: F._slow_pow(a, F.order - 2)
        self.frob = F.frob
        self.frob_inv = F.frob_inv


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, e: int = 1) -> FieldParams:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if e < 1 or k % e:
        raise ValueError(f"q-exponent {e} does not divide degree {k}")
    return FieldParams(p, k, e, _canonical_modulus(p, k))


@dataclass(frozen=True)
class FieldElement:
    field: FieldParams
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {b.field}")
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def __add__(self, b):
        return FieldElement(self.field, self.field.ops.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.ops.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.ops.sub(self._other(b), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.ops.neg(self.value))

    def __mul__(self, b):
        return FieldElement(self.field, self.field.ops.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.field.ops.inv(self.value))

    def __truediv__(self, b):
        bv = self._other(b)
        if bv == 0:
            raise ZeroDivisionError("division by zero in finite field")
        return self * FieldElement(self.field, self.field.ops.inv(bv))

    def __rtruediv__(self, b):
        return FieldElement(self.field, self._other(b)) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.field, self.field._slow_pow(self.value, n))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c if c != 1 or i == 0 else ''}{mono}")
        return "+".join(reversed(terms)) or "0"


def field_arith(a: FieldElement, b, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def frobenius_q(a: FieldElement) -> FieldElement:
    """a -> a^q."""
    return a.frobenius()


def enumerate_field(params: FieldParams) -> list[FieldElement]:
    return [FieldElement(params, a) for a in range(params.order)]


def iter_codes(params: FieldParams) -> Iterator[int]:
    return iter(range(params.order))
