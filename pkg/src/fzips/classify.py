"""Isomorphism invariant of F-zips by iterated flag refinement.

Conventions.  For flags Gamma (type J) and Delta (type K) the relative
position is the w in ^J W ^K such that (Gamma, Delta) is a translate of
(E_J, w E_K), where E_J is the coordinate flag of type J and w acts by
its permutation matrix e_k -> e_{w(k)}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .fzip import FZip, TypeFunction, standard_data, validate
from .linalg import Flag, GradedPiece, Matrix, Subspace, _frob_vec
from . import weyl
from .weyl import SimpleSubset, WeylElement

__all__ = [
    "ClassificationTrace",
    "Step",
    "InconsistencyError",
    "flag_relpos",
    "refine_flag",
    "refine_chain",
    "relpos_chains",
    "chain_subset",
    "build_g",
    "random_splittings",
    "classify",
    "t_sequence",
    "u_from_sequence",
    "codim",
    "is_ordinary",
    "a_number",
    "eo_partition",
    "EOPartition",
    "Stratum",
]


class InconsistencyError(RuntimeError):
    """An identity that holds for every F-zip failed; indicates a bug."""


Chain = tuple[Subspace, ...]


def _as_chain(x) -> Chain:
    if isinstance(x, Flag):
        return x.chain()
    chain = sorted(set(x), key=lambda s: s.dim)
    F, n = chain[0].field, chain[0].n
    if chain[0].dim:
        chain.insert(0, Subspace.zero(F, n))
    if chain[-1].dim != n:
        chain.append(Subspace.full(F, n))
    return tuple(chain)


def chain_subset(chain: Sequence[Subspace]) -> SimpleSubset:
    """tau_a lies outside the subset iff some member has dimension a."""
    n = chain[0].n
    dims = {s.dim for s in chain}
    return SimpleSubset(weyl.A, n, frozenset(a for a in range(1, n) if a not in dims))


def relpos_chains(G: Chain, De: Chain) -> WeylElement:
    n = G[0].n
    a = [s.dim for s in G]
    b = [s.dim for s in De]
    r = [[0] * len(De) for _ in G]
    for i in range(1, len(G)):
        for j in range(1, len(De)):
            if i == len(G) - 1:
                r[i][j] = b[j]
            elif j == len(De) - 1:
                r[i][j] = a[i]
            else:
                r[i][j] = (G[i] & De[j]).dim
    # fill positions block by block of Delta, values block by block of Gamma
    nxt = [a[i - 1] + 1 for i in range(len(G))]
    w = [0] * n
    for j in range(1, len(De)):
        pos = b[j - 1] + 1
        for i in range(1, len(G)):
            cnt = r[i][j] - r[i - 1][j] - r[i][j - 1] + r[i - 1][j - 1]
            for _ in range(cnt):
                w[pos - 1] = nxt[i]
                nxt[i] += 1
                pos += 1
        if pos != b[j] + 1:
            raise InconsistencyError("intersection dimensions do not come from a pair of flags")
    return WeylElement(weyl.A, tuple(w))


def flag_relpos(gamma, delta) -> WeylElement:
    """Relative position of two flags, as the element of ^J W ^K."""
    G, De = _as_chain(gamma), _as_chain(delta)
    if G[0].n != De[0].n or G[0].field != De[0].field:
        raise ValueError("flags live in different ambient spaces")
    return relpos_chains(G, De)


def refine_chain(G: Chain, De: Chain) -> Chain:
    """Members (G_{t+1} & D) + G_t over consecutive G_t < G_{t+1} and D in De."""
    out = {}
    for lo, hi in zip(G, G[1:]):
        for d in De:
            out[(hi & d) + lo] = None
    chain = sorted(out, key=lambda s: s.dim)
    if len({s.dim for s in chain}) != len(chain):
        raise InconsistencyError("refinement is not a chain")
    return tuple(chain)


def refine_flag(gamma: Flag, delta) -> Flag:
    G, De = _as_chain(gamma), _as_chain(delta)
    if G[0].n != De[0].n or G[0].field != De[0].field:
        raise ValueError("flags live in different ambient spaces")
    return Flag.from_chain(refine_chain(G, De), gamma.direction if isinstance(gamma, Flag) else "descending")


# ---------------------------------------------------------------- the group element

@dataclass(frozen=True)
class Splittings:
    A: tuple[tuple[int, Subspace], ...]  # complements splitting sigma(C)
    B: tuple[tuple[int, Subspace], ...]  # complements splitting D

    def to_json(self) -> dict:
        return {"A": {str(i): s.to_json() for i, s in self.A},
                "B": {str(i): s.to_json() for i, s in self.B}}


def _twisted_piece(z: FZip, i: int) -> GradedPiece:
    return GradedPiece(z.C[i].frobenius(), z.C[i + 1].frobenius())


def _lift_through(piece: GradedPiece, comp: Subspace, targets: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """For each target vector, the element of comp congruent to it modulo piece.small."""
    R = piece.matrix_of(comp.basis)
    S = piece.matrix_of(targets)
    mu = R.inverse() @ S
    F = comp.field
    ops = F.ops
    out = []
    for k in range(mu.ncols):
        v = [0] * comp.n
        for s, row in enumerate(comp.basis):
            c = mu.rows[s][k]
            if c:
                v = [ops.add(x, ops.mul(c, y)) for x, y in zip(v, row)]
        out.append(tuple(v))
    return out


def _check_complement(piece: GradedPiece, comp: Subspace, what: str) -> None:
    if not comp <= piece.big or comp.dim != piece.dim or (comp & piece.small).dim:
        raise ValueError(f"invalid splitting {what}")


def build_g(z: FZip, splittings: Splittings | None = None) -> Matrix:
    return _build_g(z, splittings)[0]


def _build_g(z: FZip, splittings: Splittings | None) -> tuple[Matrix, Splittings]:
    F, n = z.field, z.n
    A_in = dict(splittings.A) if splittings else {}
    B_in = dict(splittings.B) if splittings else {}
    xs, ys = [], []
    A_used, B_used = {}, {}
    for i, phi in z.phi:
        gc, gd = z.gr_C(i), z.gr_D(i)
        sc = _twisted_piece(z, i)
        twisted = [_frob_vec(F, c) for c in gc.reps]
        if i in A_in:
            _check_complement(sc, A_in[i], f"A^{i}")
            chat = _lift_through(sc, A_in[i], twisted)
        else:
            chat = twisted
        if i in B_in:
            _check_complement(gd, B_in[i], f"B_{i}")
            dhat = _lift_through(gd, B_in[i], gd.reps)
        else:
            dhat = list(gd.reps)
        A_used[i] = Subspace.span(F, n, chat)
        B_used[i] = Subspace.span(F, n, dhat)
        ops = F.ops
        for k in range(phi.ncols):
            img = [0] * n
            for l, d in enumerate(dhat):
                c = phi.rows[l][k]
                if c:
                    img = [ops.add(x, ops.mul(c, y)) for x, y in zip(img, d)]
            xs.append(chat[k])
            ys.append(tuple(img))
    X = Matrix.from_columns(F, xs, n)
    Y = Matrix.from_columns(F, ys, n)
    G = Y @ X.inverse()
    return G, Splittings(tuple(sorted(A_used.items())), tuple(sorted(B_used.items())))


def random_splittings(z: FZip, rng: random.Random) -> Splittings:
    F, n = z.field, z.n
    ops = F.ops
    A, B = {}, {}

    def jitter(vecs, small: Subspace):
        out = []
        for v in vecs:
            w = list(v)
            for b in small.basis:
                c = rng.randrange(F.order)
                if c:
                    w = [ops.add(x, ops.mul(c, y)) for x, y in zip(w, b)]
            out.append(w)
        return Subspace.span(F, n, out)

    for i, _ in z.phi:
        gc, gd = z.gr_C(i), z.gr_D(i)
        A[i] = jitter([_frob_vec(F, c) for c in gc.reps], z.C[i + 1].frobenius())
        B[i] = jitter(gd.reps, gd.small)
    return Splittings(tuple(sorted(A.items())), tuple(sorted(B.items())))


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class Step:
    J: SimpleSubset
    K: SimpleSubset
    gamma: Chain
    delta: Chain
    u: WeylElement

    def to_json(self) -> dict:
        return {"J": self.J.to_json(), "K": self.K.to_json(), "u": self.u.to_json(),
                "gamma_dims": [s.dim for s in self.gamma], "delta_dims": [s.dim for s in self.delta]}


@dataclass
class ClassificationTrace:
    g: Matrix
    splittings: Splittings
    x: WeylElement
    steps: list[Step] = dc_field(default_factory=list)
    u_infinity: WeylElement | None = None
    iterations: int = 0

    def to_json(self) -> dict:
        return {
            "u_infinity": self.u_infinity.to_json(),
            "iterations": self.iterations,
            "x": self.x.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "g": self.g.to_json(),
        }


def _twist_chain(chain: Chain, g: Matrix) -> Chain:
    return tuple(s.frobenius().image(g) for s in chain)


def _same_double_coset(v: WeylElement, w: WeylElement, J: SimpleSubset, K: SimpleSubset) -> bool:
    return weyl.min_double_coset_rep(v, J, K) == weyl.min_double_coset_rep(w, J, K)


def classify(z: FZip, splittings: Splittings | None = None) -> tuple[WeylElement, ClassificationTrace]:
    rep = validate(z)
    if not rep.ok:
        raise ValueError("invalid F-zip: " + "; ".join(rep.errors))
    data = standard_data(rep.tau)
    J, x = data.J, data.x
    g, used = _build_g(z, splittings)
    trace = ClassificationTrace(g, used, x)
    G, De = z.C.chain(), z.D.chain()
    stable = False
    while True:
        Jn, Kn = chain_subset(G), chain_subset(De)
        un = relpos_chains(G, De)
        if relpos_chains(De, _twist_chain(G, g)) != x:
            raise InconsistencyError(f"relative position x lost at step {len(trace.steps)}")
        if not (weyl.is_min_left(un, Jn) and weyl.is_min_right(un, Kn)):
            raise InconsistencyError("relative position is not a minimal double coset representative")
        if trace.steps:
            prev = trace.steps[-1]
            if Jn != weyl.intersect_conjugate(prev.J, prev.u, prev.K):
                raise InconsistencyError("refined type differs from J_n meet u_n K_n")
            if weyl.conjugate_subset(x, Jn) != Kn:
                raise InconsistencyError("K_n is not the x-conjugate of J_n")
            if not _same_double_coset(un, prev.u, Jn, prev.K):
                raise InconsistencyError("u_{n+1} leaves W_{J_{n+1}} u_n W_{K_n}")
        trace.steps.append(Step(Jn, Kn, G, De, un))
        if stable:
            break
        G1 = refine_chain(G, De)
        De1 = refine_chain(De, _twist_chain(G1, g))
        if len(G1) == len(G):
            # types are stable; record the repeated step and stop
            if De1 != De:
                raise InconsistencyError("Delta moved although Gamma is stable")
            stable = True
            continue
        trace.iterations += 1
        G, De = G1, De1
    u = trace.steps[-1].u
    if not weyl.is_min_left(u, J):
        raise InconsistencyError(f"stable relative position {u} is not in ^J W")
    trace.u_infinity = u
    return u, trace


# ---------------------------------------------------------------- T(J) sequences

@dataclass(frozen=True)
class SeqTerm:
    J: SimpleSubset
    K: SimpleSubset
    u: WeylElement


def t_sequence(data, u: WeylElement) -> list[SeqTerm]:
    """The stabilizing sequence (u_0, u_1, ...) whose limit is u.

    `data` is a `StandardData` or anything with attributes J and x.
    Every term is forced: u_n is the shortest element of W_{J_n} u W_{K_n}.
    """
    J, x = data.J, data.x
    if not weyl.is_min_left(u, J):
        raise ValueError(f"{u} is not in ^J W for {J}")
    seq: list[SeqTerm] = []
    Jn = J
    for _ in range(len(J) + 2):
        Kn = weyl.conjugate_subset(x, Jn)
        un = weyl.min_double_coset_rep(u, Jn, Kn)
        if seq:
            prev = seq[-1]
            if not _same_double_coset(un, prev.u, Jn, prev.K):
                raise InconsistencyError("sequence violates the double coset condition")
        seq.append(SeqTerm(Jn, Kn, un))
        J1 = weyl.intersect_conjugate(Jn, un, Kn)
        if J1 == Jn:
            break
        Jn = J1
    else:
        raise InconsistencyError("sequence did not stabilize")
    if u_from_sequence(seq) != u:
        raise InconsistencyError(f"no stabilizing sequence with limit {u}")
    return seq


def u_from_sequence(seq: Sequence[SeqTerm]) -> WeylElement:
    return seq[-1].u


def sequence_conditions_hold(seq: Sequence) -> bool:
    """Both membership conditions on consecutive terms, plus stabilization."""
    for t in seq:
        if not (weyl.is_min_left(t.u, t.J) and weyl.is_min_right(t.u, t.K)):
            return False
    for a, b in zip(seq, seq[1:]):
        if b.J != weyl.intersect_conjugate(a.J, a.u, a.K):
            return False
        if not _same_double_coset(b.u, a.u, b.J, a.K):
            return False
    last = seq[-1]
    return weyl.intersect_conjugate(last.J, last.u, last.K) == last.J


# ---------------------------------------------------------------- derived invariants

def codim(u: WeylElement, J: SimpleSubset) -> int:
    if not weyl.is_min_left(u, J):
        raise ValueError(f"{u} is not in ^J W for {J}")
    return weyl.dim_par(J) - weyl.length(u)


def is_ordinary(u: WeylElement, J: SimpleSubset) -> bool:
    return codim(u, J) == 0


def a_number(z: FZip) -> int:
    sup = z.tau.support
    if not set(sup) <= {0, 1}:
        raise ValueError(f"a-number needs type support in {{0, 1}}, got {sup}")
    return (z.C[1] & z.D[0]).dim


@dataclass
class Stratum:
    u: WeylElement
    labels: list
    codim: int
    ordinary: bool

    def to_json(self) -> dict:
        return {"u": list(self.u.window), "size": len(self.labels), "codim": self.codim,
                "ordinary": self.ordinary, "labels": list(self.labels)}


@dataclass
class EOPartition:
    tau: TypeFunction
    strata: list[Stratum]

    def as_mapping(self) -> dict[WeylElement, list]:
        return {s.u: s.labels for s in self.strata}

    def to_json(self) -> dict:
        return {"type": self.tau.to_json(), "strata": [s.to_json() for s in self.strata]}


def eo_partition(family: Iterable[tuple[object, FZip]]) -> EOPartition:
    groups: dict[WeylElement, list] = {}
    tau = None
    for label, z in family:
        t = z.tau
        if tau is None:
            tau = t
        elif t != tau:
            raise ValueError(f"family mixes types {tau} and {t}")
        u, _ = classify(z)
        groups.setdefault(u, []).append(label)
    if tau is None:
        raise ValueError("empty family")
    J = tau.subset()
    strata = [Stratum(u, labels, codim(u, J), is_ordinary(u, J))
              for u, labels in sorted(groups.items(), key=lambda kv: (weyl.length(kv[0]), kv[0].window))]
    return EOPartition(tau, strata)
