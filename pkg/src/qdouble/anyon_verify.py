"""End-to-end experiments tying lattice ribbon operators to the anyon data of D(G).

Every suite returns a :class:`~qdouble.reporting.SuiteReport`.  Operator
identities between ribbon multiplets are checked with the probe engine
(:func:`qdouble.engine.compare`); identities between scalar ribbon operators
are checked on the configuration maps ``x -> phi_h(x)`` and ``x -> gamma(x)``
that define them, either on all configurations of the support or on a sample
of them when the support is large.

Corruptions (negative controls) are selected by name:

``"dual_case"``
    mis-cased dual triangles (left and right actions swapped);
``"irrep"``
    a randomly perturbed, no longer multiplicative, representation;
``"intertwiner"``
    a random matrix in place of an intertwiner;
``"ground_state"``
    a random basis configuration in place of each ground state.
"""
from __future__ import annotations

import numpy as np

from .double_reps import (Representation, braiding, central_projector, direct_sum_rep,
                          intertwiner_space, irreps_of_double, tensor_rep)
from .engine import (Frame, Identity, Kron, Local, Multiplet, OperatorMatrix, Permute, Product,
                     Reshape, Scalar, State, Sum, compare, ribbon_tables)
from .errors import DimensionBudgetExceeded, GeometryInfeasible, Stuck
from .group_core import FiniteGroup
from .kernels import ribbon_map
from .lattice_geometry import (Patch, Ribbon, bridge_pair, common_start_pair,
                               concat, endpoint_windings, homotopic_pair, make_patch,
                               random_ribbon, random_start, reverse, ribbon_displacement)
from .lattice_operators import (LocalOperator, apply_ribbon_op, face_projector, ground_projector,
                                ground_space, ground_space_dimension, ribbon_op,
                                ribbon_op_recursive, site_rep, vertex_projector)
from .reporting import SuiteReport

__all__ = [
    "CORRUPTIONS",
    "perturb_irrep",
    "prop42_suite",
    "finite_braiding",
    "braiding_suite",
    "transporter_check",
    "transporter_suite",
    "intertwiner_transport",
    "intertwiner_suite",
    "anyon_distinguishability",
    "endpoint_suite",
    "ground_suite",
]

CORRUPTIONS = ("dual_case", "irrep", "intertwiner", "ground_state")

# frames above this many configurations are probed on sampled columns only
_DENSE_PROBE_MAX = 2 ** 15
# scalar identities are checked exhaustively up to this many configurations
_EXHAUSTIVE_MAX = 2 ** 18
_SAMPLED_CODES = 2 ** 13


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _check_corrupt(corrupt, allowed, suite):
    if corrupt is not None and corrupt not in allowed:
        raise ValueError(f"suite {suite!r} accepts corruptions {allowed}, got {corrupt!r}")


def perturb_irrep(D: Representation, seed=0, eps: float = 0.05) -> Representation:
    """``D`` plus a random complex perturbation; a negative-control ingredient."""
    rng = _rng(seed)
    noise = rng.normal(size=D.matrices.shape) + 1j * rng.normal(size=D.matrices.shape)
    return Representation(D.group, D.matrices + eps * noise, label=None)


def _cmp(lhs: OperatorMatrix, rhs: OperatorMatrix, frame: Frame, rng) -> tuple[float, str]:
    return compare(lhs, rhs, frame, rng, force_sparse=frame.size > _DENSE_PROBE_MAX)


def _frame(G: FiniteGroup, *edge_sets) -> Frame:
    edges = set()
    for es in edge_sets:
        edges |= set(int(e) for e in es)
    return Frame(G, sorted(edges))


class _Dev:
    """Running maximum of deviations for one identity across many instances."""

    def __init__(self):
        self.value = 0.0
        self.count = 0
        self.modes: set[str] = set()

    def update(self, dev, mode: str = "exact"):
        self.value = max(self.value, float(dev))
        self.count += 1
        self.modes.add(mode)

    def detail(self, what: str = "instances") -> str:
        return f"{self.count} {what}, {'/'.join(sorted(self.modes))}"


# -- scalar ribbon operators as configuration maps -------------------------------

def _maps(ribbon: Ribbon, G: FiniteGroup, frame: Frame, codes: np.ndarray, corrupt=None):
    """``targets[h, i] = phi_h(codes[i])`` and ``gamma[i]`` for ``F_rho^{h, g}``."""
    kinds, cases, place = ribbon_tables(ribbon, frame, corrupt)
    return ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, np.arange(G.order))


def _codes(frame: Frame, rng) -> tuple[np.ndarray, str]:
    if frame.size <= _EXHAUSTIVE_MAX:
        return np.arange(frame.size, dtype=np.int64), "exhaustive"
    return np.unique(rng.integers(0, frame.size, size=_SAMPLED_CODES, dtype=np.int64)), "sampled"


def _scalar_identities(ribbon: Ribbon, G: FiniteGroup, rng, corrupt=None) -> tuple[dict, str]:
    """Fractions of configurations violating each scalar identity.

    Multiplication ``F^{h1,g1} F^{h2,g2} = delta(g1,g2) F^{h1 h2, g1}`` holds iff
    ``phi_{h1} phi_{h2} = phi_{h1 h2}`` and ``gamma phi_h = gamma``; the adjoint
    rule ``(F^{h,g})^* = F^{h^-1, g}`` then follows from ``phi_e = id``.
    """
    n = G.order
    frame = Frame(G, ribbon.support)
    codes, mode = _codes(frame, rng)
    M = codes.size
    tg, gam = _maps(ribbon, G, frame, codes, corrupt)
    t2, g2 = _maps(ribbon, G, frame, tg.ravel(), corrupt)
    t2 = t2.reshape(n, n, M)                       # t2[h1, h2, i] = phi_h1(phi_h2(x_i))
    g2 = g2.reshape(n, M)                          # g2[h, i] = gamma(phi_h(x_i))
    prod = G.cayley
    mult = np.mean(t2 != tg[prod])                 # tg[prod][h1, h2] = phi_{h1 h2}
    mult = max(mult, np.mean(g2 != gam[None, :]))
    inv_comp = t2[G.inverse, np.arange(n)]         # phi_{h^-1}(phi_h(x))
    adj = max(np.mean(inv_comp != codes[None, :]), np.mean(tg[0] != codes))
    # reversal: F_rho^{h,g} = F_rhobar^{g^-1 h^-1 g, g^-1}
    tr, gr = _maps(reverse(ribbon), G, frame, codes, corrupt)
    rev = np.mean(gr != G.inverse[gam])
    labels = prod[prod[G.inverse[gam][None, :], G.inverse[np.arange(n)][:, None]], gam[None, :]]
    rev = max(rev, np.mean(np.take_along_axis(tr, labels, axis=0) != tg))
    # sum to identity: sum_k F^{e,k} = 1, i.e. phi_e = id and gamma total
    total = max(np.mean(tg[0] != codes), np.mean((gam < 0) | (gam >= n)))
    return {"mult": float(mult), "adjoint": float(adj), "reversal": float(rev),
            "sum": float(total)}, mode


def _scalar_braiding(r1: Ribbon, r2: Ribbon, G: FiniteGroup, rng, corrupt=None) -> tuple[float, str]:
    """Fraction of violations of ``F2^{a2,b2} F1^{a1,b1} = F1^{a1,b1} F2^{a1^-1 a2 a1, a1^-1 b2}``.

    Labels are (shift, projector).  Both sides are partial permutations, so
    the identity holds iff, for all ``x`` and shifts ``a1, a2``,
    ``gamma2(phi1_a1 x) = a1 gamma2(x)``, ``gamma1(phi2_c x) = gamma1(x)`` with
    ``c = a1^-1 a2 a1``, and ``phi2_a2 phi1_a1 x = phi1_a1 phi2_c x``.
    """
    n = G.order
    frame = _frame(G, r1.edges, r2.edges)
    codes, mode = _codes(frame, rng)
    M = codes.size
    t1, g1 = _maps(r1, G, frame, codes, corrupt)
    t2, g2 = _maps(r2, G, frame, codes, corrupt)
    bad = 0.0
    # charge of rho2 after a shift along rho1
    _, g2_after = _maps(r2, G, frame, t1.ravel(), corrupt)
    g2_after = g2_after.reshape(n, M)
    bad = max(bad, np.mean(g2_after != G.cayley[np.arange(n)[:, None], g2[None, :]]))
    _, g1_after = _maps(r1, G, frame, t2.ravel(), corrupt)
    bad = max(bad, np.mean(g1_after.reshape(n, M) != g1[None, :]))
    left, _ = _maps(r2, G, frame, t1.ravel(), corrupt)
    left = left.reshape(n, n, M)                   # left[a2, a1, i] = phi2_a2(phi1_a1 x)
    right, _ = _maps(r1, G, frame, t2.ravel(), corrupt)
    right = right.reshape(n, n, M)                 # right[a1, c, i] = phi1_a1(phi2_c x)
    a1 = np.arange(n)[None, :]
    a2 = np.arange(n)[:, None]
    c = G.cayley[G.cayley[G.inverse[a1], a2], a1]  # c[a2, a1]
    rhs = right[np.broadcast_to(a1, (n, n)), c]    # rhs[a2, a1, i]
    bad = max(bad, np.mean(left != rhs))
    return float(bad), mode


# -- identity (i)-(vi) of ribbon multiplets --------------------------------------

def _separated_positive_ribbon(patch: Patch, rng, length: int, max_edges: int | None = None) -> Ribbon:
    for _ in range(200):
        try:
            r = random_ribbon(patch, random_start(patch, rng), length, rng, positive=True)
        except Stuck:
            continue
        if r.endpoints_separated():
            return r
    raise GeometryInfeasible(f"no positive ribbon of length {length} with separated endpoints")


def _ribbon_edge_cap(G: FiniteGroup) -> int:
    """Largest edge count whose configuration space fits the probe budget."""
    from ._config import DIMENSION_BUDGET
    k = 1
    while G.order ** (k + 1) <= DIMENSION_BUDGET:
        k += 1
    return k


def prop42_suite(group: FiniteGroup, patch: Patch | None = None, n_ribbons: int = 20, seed=0,
                 tol: float = 1e-9, max_len: int = 8, corrupt: str | None = None,
                 irreps: list[Representation] | None = None) -> SuiteReport:
    """Ribbon multiplet identities and scalar ribbon identities on random positive ribbons.

    For each ribbon (length 2 to ``max_len``, positive, with distinct end
    vertices and faces) the suite checks unitarity, the reversal/adjoint rule,
    direct sums and tensor products, splitting at a random cut and intertwiner
    equivariance of the multiplets, and the multiplication, adjoint, reversal
    and sum-to-identity rules of the scalar operators.  Pairs of positive
    ribbons with a common start are used for the braiding relation, both for
    multiplets and for scalar operators.

    Raises
    ------
    DimensionBudgetExceeded
        When ``max_len`` triangles exceed the configuration budget of the group.
    """
    _check_corrupt(corrupt, ("dual_case", "irrep"), "prop42")
    G = group
    patch = make_patch(8, 8, "open") if patch is None else patch
    rng = _rng(seed)
    report = SuiteReport(suite="prop42", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    cap = _ribbon_edge_cap(G)
    if max_len > cap:
        raise DimensionBudgetExceeded(
            f"ribbons of {max_len} triangles exceed the budget for |G| = {G.order} (max {cap})")
    irr = irreps_of_double(G) if irreps is None else list(irreps)
    reps = [perturb_irrep(D, rng) for D in irr] if corrupt == "irrep" else irr
    dual_bad = "dual_case" if corrupt == "dual_case" else None
    m = len(reps)
    names = ["(i) unitarity", "(ii) reversal is adjoint", "(iii) direct sum", "(iii) tensor product",
             "(iv) concatenation", "(v) intertwiner equivariance", "(vi) braiding of positive ribbons"]
    dev = {k: _Dev() for k in names}
    sdev = {k: _Dev() for k in ("mult", "adjoint", "reversal", "sum", "braid", "recursion")}
    for i in range(n_ribbons):
        length = int(rng.integers(2, max_len + 1))
        r = _separated_positive_ribbon(patch, rng, length)
        frame = Frame(G, r.support)
        ia, ib_ = (1 + i % (m - 1) if m > 1 else 0), (2 + 3 * i) % m
        D, D2 = reps[ia], reps[ib_]
        n1 = D.dim
        F = Multiplet(r, D, corrupt=dual_bad)
        I1 = Identity((n1,))
        for lhs, rhs in ((F @ F.adjoint(), I1), (F.adjoint() @ F, I1)):
            dev[names[0]].update(*_cmp(lhs, rhs, frame, rng))
        dev[names[1]].update(*_cmp(Multiplet(reverse(r), D, corrupt=dual_bad), F.adjoint(), frame, rng))
        # direct sum: block-diagonal embedding of the two multiplets
        S = direct_sum_rep(D, D2)
        n2 = D2.dim
        e1 = np.eye(n1 + n2)[:, :n1]
        e2 = np.eye(n1 + n2)[:, n1:]
        F2 = Multiplet(r, D2, corrupt=dual_bad)
        blocks = Sum(Product(Scalar(e1, (n1,), (n1 + n2,)), F, Scalar(e1.T, (n1 + n2,), (n1,))),
                     Product(Scalar(e2, (n2,), (n1 + n2,)), F2, Scalar(e2.T, (n1 + n2,), (n2,))))
        dev[names[2]].update(*_cmp(Multiplet(r, S, corrupt=dual_bad), blocks, frame, rng))
        T = tensor_rep(D, D2)
        flat = Reshape((n1, n2), (n1 * n2,))
        dev[names[3]].update(*_cmp(Product(flat.adjoint(), Multiplet(r, T, corrupt=dual_bad), flat),
                                   Kron(F, F2), frame, rng))
        cut = int(rng.integers(1, len(r)))
        dev[names[4]].update(*_cmp(F, Multiplet(r[:cut], D, corrupt=dual_bad)
                                   @ Multiplet(r[cut:], D, corrupt=dual_bad), frame, rng))
        # (v): t in (D | D + D2), taken from the computed intertwiner space
        ib = intertwiner_space(irr[ia], direct_sum_rep(irr[ia], irr[ib_]))
        if ib.dim:
            t = Scalar(ib.basis[0], (n1 + n2,), (n1,))
            FS = Multiplet(r, S, corrupt=dual_bad)
            dev[names[5]].update(*_cmp(F @ t, t @ FS, frame, rng))
            dev[names[5]].update(*_cmp(F.adjoint() @ t, t @ FS.adjoint(), frame, rng))
        # scalar identities
        sc, mode = _scalar_identities(r, G, rng, dual_bad)
        for k, v in sc.items():
            sdev[k].update(v, mode)
        if G.order ** len(r) <= 4096 and len(r) <= 4:
            h, g = (int(x) for x in rng.integers(0, G.order, size=2))
            sdev["recursion"].update(ribbon_op(r, G, h, g).deviation(ribbon_op_recursive(r, G, h, g)))
    # braiding pairs
    n_pairs = max(4, n_ribbons // 5)
    pair_cap = min(cap, 2 * max_len - 1)
    for i in range(n_pairs):
        total = int(rng.integers(3, pair_cap + 2))
        len1 = int(rng.integers(1, total))
        len2 = total - len1
        try:
            r1, r2 = common_start_pair(patch, len1, len2, seed=rng)
        except Stuck as exc:
            raise GeometryInfeasible(str(exc)) from exc
        frame = _frame(G, r1.edges, r2.edges)
        Da, Db = reps[(i + 1) % m], reps[(2 * i + 3) % m]
        if corrupt == "irrep":
            B = braiding(irr[(i + 1) % m], irr[(2 * i + 3) % m]).matrix
        else:
            B = braiding(Da, Db).matrix
        na, nb = Da.dim, Db.dim
        lhs = Kron(Multiplet(r2, Db, corrupt=dual_bad), Multiplet(r1, Da, corrupt=dual_bad))
        rhs = Product(Scalar(B, (na, nb), (nb, na)),
                      Kron(Multiplet(r1, Da, corrupt=dual_bad), Multiplet(r2, Db, corrupt=dual_bad)),
                      Permute((nb, na), (1, 0)))
        dev[names[6]].update(*_cmp(lhs, rhs, frame, rng))
        bad, mode = _scalar_braiding(r1, r2, G, rng, dual_bad)
        sdev["braid"].update(bad, mode)
    anchors = ["ribbon.unitarity", "ribbon.adjoint", "ribbon.direct_sum", "ribbon.tensor",
               "ribbon.concatenation", "ribbon.intertwiner", "ribbon.braiding"]
    for name, anchor in zip(names, anchors):
        if dev[name].count:
            report.add(name, anchor, dev[name].value, tol, dev[name].detail("checks"))
        else:
            report.add_bool(name, anchor, False, "no instance could be formed")
    for key, name, anchor in (("mult", "scalar multiplication rule", "ribbon.multiplication"),
                              ("adjoint", "scalar adjoint rule", "ribbon.multiplication"),
                              ("reversal", "scalar reversal rule", "ribbon.reversal"),
                              ("sum", "sum of charge projectors is the identity", "ribbon.sum_to_identity"),
                              ("braid", "scalar braiding of positive ribbons", "ribbon.braiding")):
        report.add(name, anchor, sdev[key].value, tol, sdev[key].detail("ribbons"))
    if sdev["recursion"].count:
        report.add("configuration-map kernel equals splitting recursion", "plumbing",
                   sdev["recursion"].value, tol, sdev["recursion"].detail("ribbons"))
    # precondition control: the tensor rule fails on negative ribbons for non-abelian G
    if not G.is_abelian():
        neg = reverse(_separated_positive_ribbon(patch, rng, min(6, cap)))
        nonab = [D for D in irr if D.dim > 1 and D.label[0] > 0]  # fluxes of non-central classes
        Da, Db = max(nonab, key=lambda D: D.dim), nonab[0]
        flat = Reshape((Da.dim, Db.dim), (Da.dim * Db.dim,))
        d, mode = _cmp(Product(flat.adjoint(), Multiplet(neg, tensor_rep(Da, Db)), flat),
                       Kron(Multiplet(neg, Da), Multiplet(neg, Db)), Frame(G, neg.support), rng)
        report.add("tensor rule on a negative ribbon (precondition control)",
                   "ribbon.tensor", d, tol, mode, control=True, expect_pass=False)
    report.data["n_ribbons"] = n_ribbons
    report.data["n_pairs"] = n_pairs
    return report.finish()


# -- finite braiding ------------------------------------------------------------

def _braiding_geometry(patch: Patch, rng, variant: int):
    """Ribbons for the transport chain: ``sigma_R = rho_n zeta_R`` and ``sigma_L = rho_m zeta_L``.

    ``rho_m`` extends ``rho_n`` by ``l`` triangles; ``zeta_R`` and the
    continuation ``rho_(n,m] zeta_L`` are positive ribbons leaving the end of
    ``rho_n`` in the braiding configuration, so ``zeta_R`` and ``zeta_L`` end at
    separate sites on either side of ``rho``.
    """
    n_len, zr_len, l_len = 1 + variant, 2 + variant, 1 + variant
    for _ in range(100):
        try:
            s0 = random_start(patch, rng)
            rho_n = random_ribbon(patch, s0, n_len, rng, positive=True)
            zR, rest = common_start_pair(patch, zr_len, l_len + 2, seed=rng, start=rho_n.end,
                                         avoid=rho_n.edges)
        except Stuck:
            continue
        rho_m = concat(rho_n, rest[:l_len])
        zL = rest[l_len:]
        sR, sL = concat(rho_n, zR), concat(rho_m, zL)
        if sR.endpoints_separated() and sL.endpoints_separated():
            return sR, sL
    raise GeometryInfeasible("braiding geometry does not fit the patch")


def _transport_chain(sR: Ribbon, sL: Ribbon, D1: Representation, D2: Representation,
                     corrupt=None) -> OperatorMatrix:
    """``(V* x 1)(1 x U*) P12 (1 x V)(U x 1)`` with ``U = F_{sR bar}^{D1}``, ``V = F_{sL bar}^{D2}``."""
    n1, n2 = D1.dim, D2.dim
    U = Multiplet(reverse(sR), D1, corrupt=corrupt)
    V = Multiplet(reverse(sL), D2, corrupt=corrupt)
    return Product(Kron(V.adjoint(), Identity((n1,))), Kron(Identity((n2,)), U.adjoint()),
                   Permute((n1, n2), (1, 0)), Kron(Identity((n1,)), V), Kron(U, Identity((n2,))))


def _extract_matrix(op: OperatorMatrix, frame: Frame, code: int) -> tuple[np.ndarray, float]:
    """Vector-space matrix of ``op`` on the basis configuration ``code``.

    Returns the matrix and the largest amplitude that leaks to other
    configurations (zero when ``op`` acts as ``1 (x) M``).
    """
    n_in = int(np.prod(op.in_dims))
    amps = np.eye(n_in, dtype=complex).reshape((1,) + tuple(op.in_dims) + (n_in,))
    out = op.apply(State(frame, amps, np.array([code], dtype=np.int64))).to_sparse()
    n_out = int(np.prod(op.out_dims))
    hit = np.flatnonzero(out.codes == code)
    M = out.amps[hit[0]].reshape(n_out, n_in) if hit.size else np.zeros((n_out, n_in), complex)
    others = np.delete(out.amps.reshape(out.amps.shape[0], -1), hit, axis=0)
    leak = float(np.max(np.abs(others), initial=0.0))
    return M, leak


def finite_braiding(group: FiniteGroup, D1: Representation, D2: Representation, seed=0,
                    patch: Patch | None = None, tol: float = 1e-9, variant: int = 0,
                    corrupt: str | None = None) -> tuple[np.ndarray, SuiteReport]:
    """Braiding matrix of ``D1, D2`` computed by transporting excitations on the lattice.

    Two excitations are moved around each other with finite transporters and
    the resulting operator is read off on basis configurations; it must act as
    ``1 (x) B(D1, D2)``.  ``variant`` selects the ribbon lengths.

    Raises
    ------
    GeometryInfeasible
        When the layout does not fit the patch.
    """
    _check_corrupt(corrupt, ("dual_case", "irrep"), "braiding")
    G = group
    patch = make_patch(8, 8, "open") if patch is None else patch
    rng = _rng(seed)
    report = SuiteReport(suite="finite_braiding", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    sR, sL = _braiding_geometry(patch, rng, variant)
    frame = _frame(G, sR.edges, sL.edges)
    R1, R2 = (perturb_irrep(D1, rng), perturb_irrep(D2, rng)) if corrupt == "irrep" else (D1, D2)
    X = _transport_chain(sR, sL, R1, R2, "dual_case" if corrupt == "dual_case" else None)
    B = braiding(D1, D2).matrix
    n1, n2 = D1.dim, D2.dim
    mats, leak = [], 0.0
    for code in np.unique(rng.integers(0, frame.size, size=3)):
        M, lk = _extract_matrix(X, frame, int(code))
        mats.append(M)
        leak = max(leak, lk)
    M = mats[0]
    report.add("transport chain equals B(D1, D2) on basis configurations", "braiding.finite",
               max(float(np.max(np.abs(m - B))) for m in mats), tol, f"{len(mats)} configurations")
    report.add("transport chain acts trivially on the lattice", "braiding.finite", leak, tol)
    d, mode = _cmp(X, Scalar(B, (n1, n2), (n2, n1)), frame, rng)
    report.add("transport chain equals 1 (x) B(D1, D2) on probes", "braiding.finite", d, tol, mode)
    report.data["matrix"] = M
    report.data["edges"] = len(frame.edges)
    return M, report.finish()


def _default_pairs(irr: list[Representation]) -> list[tuple[int, int]]:
    if len(irr) <= 4:
        return [(i, j) for i in range(len(irr)) for j in range(len(irr))]
    two = [i for i, D in enumerate(irr) if D.dim == 2][:2]
    if len(two) < 2:
        two = [i for i, D in enumerate(irr) if D.dim > 1][:2]
    a, b = two
    return [(a, b), (b, a), (a, a)]


def braiding_suite(group: FiniteGroup, pairs=None, seeds=(0, 1), patch: Patch | None = None,
                   tol: float = 1e-9, corrupt: str | None = None) -> SuiteReport:
    """Finite braiding for several irrep pairs and two geometries, plus monodromies.

    The geometry for the ``k``-th seed uses ribbon-length variant ``k``, so
    the seed-independence check also compares different ribbon lengths.
    """
    _check_corrupt(corrupt, ("dual_case", "irrep"), "braiding")
    G = group
    patch = make_patch(8, 8, "open") if patch is None else patch
    irr = irreps_of_double(G)
    pairs = _default_pairs(irr) if pairs is None else list(pairs)
    report = SuiteReport(suite="braiding", group=G.name, patch=patch.descriptor(), seed=int(seeds[0]))
    found = {}
    for i, j in pairs:
        mats = []
        for k, sd in enumerate(seeds):
            M, sub = finite_braiding(G, irr[i], irr[j], seed=sd, patch=patch, tol=tol, variant=k,
                                     corrupt=corrupt)
            report.extend(sub, prefix=f"{irr[i].label}x{irr[j].label} seed {sd}: ")
            mats.append(M)
        spread = max(float(np.max(np.abs(m - mats[0]))) for m in mats)
        report.add(f"{irr[i].label}x{irr[j].label}: independent of geometry", "braiding.independence",
                   spread, tol, f"{len(seeds)} geometries")
        found[(i, j)] = mats[0]
    mono = {}
    for (i, j), M in found.items():
        if irr[i].dim == 1 and irr[j].dim == 1 and (j, i) in found:
            mono[f"{irr[i].label}x{irr[j].label}"] = complex(found[(j, i)][0, 0] * M[0, 0])
    report.data["monodromy"] = mono
    report.data["matrices"] = {f"{irr[i].label}x{irr[j].label}": M for (i, j), M in found.items()}
    return report.finish()


# -- transporters and intertwiners ---------------------------------------------

def _amp(ribbon: Ribbon, D: Representation, O: LocalOperator, corrupt=None) -> OperatorMatrix:
    F = Multiplet(ribbon, D, corrupt=corrupt)
    return Product(F, Local(O, (D.dim,)), F.adjoint())


def _elementary(G: FiniteGroup, e: int, a: int, b: int) -> LocalOperator:
    m = np.zeros((G.order, G.order), dtype=complex)
    m[a, b] = 1.0
    return LocalOperator(G, (e,), m)


def _random_local(G: FiniteGroup, edges, rng) -> LocalOperator:
    d = G.order ** len(edges)
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return LocalOperator(G, sorted(edges), m)


def _free_edge(patch: Patch, used: set[int], rng) -> int:
    free = [e for e in range(patch.n_edges) if e not in used]
    if not free:
        raise GeometryInfeasible("no edge outside the ribbons")
    return int(free[int(rng.integers(len(free)))])


def transporter_check(group: FiniteGroup, D: Representation, seed=0, patch: Patch | None = None,
                      tol: float = 1e-9, lengths=(2, 1, 2), tail: int = 2, n_ops: int = 6,
                      corrupt: str | None = None) -> SuiteReport:
    """Conjugation by the bridge multiplet moves the start of a ribbon.

    :func:`bridge_pair` gives a positive ``rho_m``, a negative ``rho'_m`` and a
    bridge ``xi`` with ``sigma = rho_m xi reverse(rho'_m)``.  The ribbon is
    ``rho = rho_m rho_>m`` and the rerouted chain is
    ``rho^(m) = rho'_m reverse(xi) rho_>m``.  The suite checks

        F_rho^(m) (O (x) 1) F_rho^(m)* = Ad[F_sigmabar](F_rho (O (x) 1) F_rho*)

    on elementary operators near the start of ``rho``, the unitarity of
    ``F_sigmabar``, and that an operator away from all ribbons is left as
    ``O (x) 1``.

    Both positive triangles leaving a site cross the same edge, so the first
    triangles of ``xi`` and ``rho_>m`` share an edge and ``rho^(m)`` is a chain
    of triangles rather than an edge-disjoint ribbon.  Its multiplet is the
    product of the multiplets of ``rho'_m``, ``reverse(xi)`` and ``rho_>m``,
    which is what the splitting recursion gives for a chain.  With
    ``tail=0`` the rerouted ribbon ``rho'_m reverse(xi)`` is a ribbon and is
    used directly.

    Raises
    ------
    GeometryInfeasible
        When no bridge geometry fits the patch.
    """
    _check_corrupt(corrupt, ("irrep",), "transporter")
    G = group
    patch = make_patch(8, 8, "open") if patch is None else patch
    rng = _rng(seed)
    report = SuiteReport(suite="transporter", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    Dc = perturb_irrep(D, rng) if corrupt == "irrep" else D
    bad = "dual_case" if corrupt == "dual_case" else None
    geom = None
    for _ in range(100):
        try:
            r1, r2, xi = bridge_pair(patch, rng, lengths)
        except Stuck:
            continue
        sigma = concat(r1, xi, reverse(r2))
        if not sigma.endpoints_separated():
            continue
        if tail == 0:
            geom = (r1, r2, xi, sigma, None)
            break
        junction = xi.triangles[0] if len(xi) else r2.triangles[-1].flipped()
        other = "dual" if junction.kind == "direct" else "direct"
        try:
            rest = random_ribbon(patch, r1.end, tail, rng, positive=True, first=other,
                                 avoid=set(sigma.edges) - {junction.edge})
        except Stuck:
            continue
        geom = (r1, r2, xi, sigma, rest)
        break
    if geom is None:
        raise GeometryInfeasible("bridge geometry does not fit the patch")
    r1, r2, xi, sigma, rest = geom
    n = D.dim

    def mult(r):
        return Multiplet(r, Dc, corrupt=bad)

    if rest is None:
        rho = r1
        F_rho = mult(r1)
        F_new = mult(concat(r2, reverse(xi)))
        used = set(sigma.edges)
    else:
        rho = concat(r1, rest)
        F_rho = mult(rho)
        F_new = Product(mult(r2), mult(reverse(xi)), mult(rest))
        used = set(sigma.edges) | set(rest.edges)
    e_off = _free_edge(patch, used, rng)
    frame = _frame(G, used, [e_off])
    S = mult(reverse(sigma))
    I = Identity((n,))
    dev = _Dev()
    for lhs in (S @ S.adjoint(), S.adjoint() @ S):
        dev.update(*_cmp(lhs, I, frame, rng))
    report.add("bridge multiplet is unitary", "transporter.unitarity", dev.value, tol, dev.detail("checks"))

    def amp(F, O):
        return Product(F, Local(O, (n,)), F.adjoint())

    ops = []
    near = list(r1.edges[:2])
    for _ in range(n_ops):
        e = near[int(rng.integers(len(near)))]
        a, b = (int(x) for x in rng.integers(0, G.order, size=2))
        ops.append(_elementary(G, e, a, b))
    ops.append(_random_local(G, near, rng))
    dev = _Dev()
    for O in ops:
        dev.update(*_cmp(amp(F_new, O), Product(S, amp(F_rho, O), S.adjoint()), frame, rng))
    report.add("rerouted amplimorphism equals conjugated amplimorphism", "transporter.intertwining",
               dev.value, tol, dev.detail("operators"))
    O = _random_local(G, [e_off], rng)
    dev = _Dev()
    for F in (F_rho, F_new):
        dev.update(*_cmp(amp(F, O), Local(O, (n,)), frame, rng))
    report.add("operator off the ribbons is left as O (x) 1", "transporter.disjoint", dev.value, tol,
               dev.detail("ribbons"))
    report.data["edges"] = len(frame.edges)
    report.data["irrep_dim"] = n
    report.data["tail"] = 0 if rest is None else len(rest)
    return report.finish()


def intertwiner_transport(group: FiniteGroup, D1: Representation, D2: Representation,
                          ribbon: Ribbon | None = None, seed=0, t: np.ndarray | None = None,
                          patch: Patch | None = None, tol: float = 1e-9, n_ops: int = 4,
                          corrupt: str | None = None) -> SuiteReport:
    """``(1 (x) t) mu^{D2}(O) = mu^{D1}(O) (1 (x) t)`` for ``t`` in ``(D1 | D2)``.

    ``t`` defaults to the first vector of the computed intertwiner space.  A
    ``t`` that is not an intertwiner makes the suite fail.
    """
    _check_corrupt(corrupt, ("intertwiner",), "intertwiner")
    G = group
    patch = make_patch(8, 8, "open") if patch is None else patch
    rng = _rng(seed)
    report = SuiteReport(suite="intertwiner", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    n1, n2 = D1.dim, D2.dim
    if t is None:
        space = intertwiner_space(D1, D2)
        if not space.dim:
            report.add_bool("intertwiner space is nonempty", "intertwiner.transport", False)
            return report.finish()
        t = space.basis[0]
    t = np.asarray(t, dtype=complex)
    if corrupt == "intertwiner":
        t = rng.normal(size=(n1, n2)) + 1j * rng.normal(size=(n1, n2))
    if ribbon is None:
        length = min(4, max(2, _ribbon_edge_cap(G) - 2))
        ribbon = _separated_positive_ribbon(patch, rng, length)
    e_near = _free_edge(patch, set(ribbon.edges), rng)
    frame = _frame(G, ribbon.edges, [e_near])
    T = Scalar(t, (n2,), (n1,))
    dev = _Dev()
    edges = list(ribbon.edges)
    ops = [_random_local(G, [edges[int(rng.integers(len(edges)))]], rng) for _ in range(n_ops)]
    ops.append(_random_local(G, [edges[0], e_near], rng))
    for O in ops:
        dev.update(*_cmp(T @ _amp(ribbon, D2, O), _amp(ribbon, D1, O) @ T, frame, rng))
    report.add("intertwiner commutes with transported operators", "intertwiner.transport",
               dev.value, tol, dev.detail("operators"))
    return report.finish()


def _suite_irreps(irr: list[Representation], max_dim: int, limit: int) -> list[int]:
    """Nontrivial irreps up to ``max_dim``, one per dimension first, then the rest."""
    idx = [i for i, D in enumerate(irr) if i > 0 and D.dim <= max_dim]
    first = {}
    for i in idx:
        first.setdefault(irr[i].dim, i)
    order = sorted(first.values(), key=lambda i: -irr[i].dim)
    order += [i for i in idx if i not in order]
    return order[:limit]


def transporter_suite(group: FiniteGroup, seed=0, patch: Patch | None = None, tol: float = 1e-9,
                      max_dim: int = 3, limit: int = 3, corrupt: str | None = None) -> SuiteReport:
    """:func:`transporter_check` for several nontrivial irreps of D(G).

    The irreps of largest dimension up to ``max_dim`` come first, so for S3
    the suite covers a dim-3 irrep.
    """
    _check_corrupt(corrupt, ("irrep",), "transporter")
    G = group
    irr = irreps_of_double(G)
    patch = make_patch(8, 8, "open") if patch is None else patch
    report = SuiteReport(suite="transporter", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    for i in _suite_irreps(irr, max_dim, limit):
        sub = transporter_check(G, irr[i], seed=seed, patch=patch, tol=tol, corrupt=corrupt)
        report.extend(sub, prefix=f"[{irr[i].label[0]}.{irr[i].label[1]}] ")
        report.data.setdefault("irreps", []).append({"label": irr[i].label, "dim": irr[i].dim,
                                                     "tail": sub.data["tail"]})
    return report.finish()


def intertwiner_suite(group: FiniteGroup, seed=0, patch: Patch | None = None, tol: float = 1e-9,
                      max_dim: int = 3, limit: int = 3, corrupt: str | None = None) -> SuiteReport:
    """:func:`intertwiner_transport` over several nontrivial irreps ``D``.

    Cases are ``t = I`` on ``(D | D)``, the first inclusion of ``D`` into
    ``D (+) D`` and the first inclusion of ``D`` into ``D (+) vacuum``.  The
    last case keeps the intertwiner control meaningful for one-dimensional
    ``D``, where every matrix intertwines the first two.
    """
    _check_corrupt(corrupt, ("intertwiner",), "intertwiner")
    G = group
    irr = irreps_of_double(G)
    patch = make_patch(8, 8, "open") if patch is None else patch
    report = SuiteReport(suite="intertwiner", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    for i in _suite_irreps(irr, max_dim, limit):
        D = irr[i]
        n = D.dim
        tag = f"{D.label[0]}.{D.label[1]}"
        sub = intertwiner_transport(G, D, D, seed=seed, t=np.eye(n), patch=patch, tol=tol,
                                    corrupt=corrupt)
        report.extend(sub, prefix=f"[{tag}, identity] ")
        sub = intertwiner_transport(G, direct_sum_rep(D, D), D, seed=seed, t=np.eye(2 * n)[:, :n],
                                    patch=patch, tol=tol, corrupt=corrupt)
        report.extend(sub, prefix=f"[{tag}, inclusion] ")
        sub = intertwiner_transport(G, direct_sum_rep(D, irr[0]), D, seed=seed,
                                    t=np.eye(n + 1)[:, :n], patch=patch, tol=tol, corrupt=corrupt)
        report.extend(sub, prefix=f"[{tag}, inclusion beside vacuum] ")
    return report.finish()


# -- ground states, excitations and charge measurement --------------------------

def _random_configuration_states(states, rng):
    out = []
    for psi in states:
        st = psi.state
        code = int(rng.integers(0, st.frame.size))
        out.append(State(st.frame, np.ones(1, dtype=complex), np.array([code], dtype=np.int64)))
    return out


def ground_suite(group: FiniteGroup, patch: Patch | None = None, seed=0, tol: float = 1e-9,
                 corrupt: str | None = None) -> SuiteReport:
    """Ground-space dimension by three routes and expectation values of all terms.

    The routes are the orbit construction of :func:`ground_space`, the trace
    of the ground projector and the averaged fixed-point count of gauge moves
    on flat configurations.  Routes that exceed the budget are skipped and
    reported as such; the suite needs at least the orbit route.
    """
    _check_corrupt(corrupt, ("ground_state",), "ground")
    G = group
    patch = make_patch(2, 2, "torus") if patch is None else patch
    if not patch.is_torus:
        raise ValueError("ground states are computed on torus patches only")
    rng = _rng(seed)
    report = SuiteReport(suite="ground", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    gs = ground_space(patch, G)
    dims = {"orbits": len(gs)}
    try:
        dims["fixed_point_count"] = ground_space_dimension(patch, G)
    except DimensionBudgetExceeded:
        report.data["fixed_point_count"] = "over budget"
    try:
        P = ground_projector(patch, G)
        sq = P @ P
        report.add("ground projector is idempotent", "ground.projector", P.deviation(sq), tol)
        dims["projector_trace"] = int(round(float(np.real(P.matrix.diagonal().sum()))))
    except DimensionBudgetExceeded:
        report.data["projector_trace"] = "over budget"
    report.add_bool("ground-space dimension agrees across routes", "ground.dimension",
                    len(set(dims.values())) == 1, str(dims))
    n_anyons = len(irreps_of_double(G))
    report.add_bool("ground-space dimension equals the number of anyon types", "ground.dimension",
                    dims["orbits"] == n_anyons, f"{dims['orbits']} vs {n_anyons}")
    states = [psi.state for psi in gs]
    if corrupt == "ground_state":
        states = _random_configuration_states(gs, rng)
    gram = np.array([[a.vdot(b) for b in states] for a in states])
    report.add("ground states are orthonormal", "ground.orthonormal",
               float(np.max(np.abs(gram - np.eye(len(states))), initial=0.0)), tol)
    terms = ([vertex_projector(patch, G, v) for v in range(patch.n_vertices)]
             + [face_projector(patch, G, f) for f in range(patch.n_faces)])
    worst = 0.0
    for st in states:
        for A in terms:
            val = st.vdot(A.apply_state(st))
            worst = max(worst, abs(val - 1.0))
    report.add("every ground state has <A_v> = <B_f> = 1", "ground.frustration_free", worst, tol,
               f"{len(states)} states, {len(terms)} terms")
    report.data["dimension"] = dims
    report.data["state_sizes"] = [int(st.amps.shape[0]) for st in states]
    return report.finish()


def endpoint_suite(group: FiniteGroup, patch: Patch | None = None, n_pairs: int = 20, seed=0,
                   tol: float = 1e-9, corrupt: str | None = None) -> SuiteReport:
    """Ribbons with common end sites that deform into each other act equally on ground states.

    Pairs come from :func:`homotopic_pair`: the loop formed by the two
    ribbons does not wind around the endpoint vertices or faces.  A control
    records the deviation of pairs whose loop wraps around the torus and a
    second one that of pairs whose loop winds around an endpoint.
    """
    _check_corrupt(corrupt, ("ground_state",), "endpoint")
    G = group
    patch = make_patch(3, 3, "torus") if patch is None else patch
    rng = _rng(seed)
    report = SuiteReport(suite="endpoint", group=G.name, patch=patch.descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    gs = ground_space(patch, G)
    states = [psi.state for psi in gs]
    if corrupt == "ground_state":
        states = _random_configuration_states(gs, rng)

    def deviation(r1, r2):
        worst = 0.0
        for st in states:
            for h in range(G.order):
                for g in range(G.order):
                    worst = max(worst, apply_ribbon_op(st, r1, G, h, g)
                                .difference(apply_ribbon_op(st, r2, G, h, g)))
        return worst

    dev = _Dev()
    lengths = []
    for _ in range(n_pairs):
        r1, r2 = homotopic_pair(patch, rng)
        dev.update(deviation(r1, r2))
        lengths.append((len(r1), len(r2)))
    report.add("equal-endpoint ribbons act identically on ground states", "ribbon.endpoints",
               dev.value, tol, f"{n_pairs} pairs, {len(states)} states")
    report.data["pair_lengths"] = lengths
    # controls: equal end sites but loops that wrap around the torus, and
    # loops that wind around an endpoint
    ctrl, wind = _Dev(), _Dev()
    for _ in range(400):
        s0 = random_start(patch, rng)
        by_end: dict = {}
        for _ in range(80):
            try:
                r = random_ribbon(patch, s0, int(rng.integers(1, 9)), rng, interior=False)
            except Stuck:
                continue
            by_end.setdefault((r.end, ribbon_displacement(r)), []).append(r)
        ends: dict = {}
        for (end, _), rs in by_end.items():
            ends.setdefault(end, []).append(rs[0])
            if wind.count < 5 and len(rs) > 1 and any(endpoint_windings(rs[0], rs[1])):
                wind.update(deviation(rs[0], rs[1]))
        for rs in ends.values():
            if len(rs) > 1 and ctrl.count < 5:
                ctrl.update(deviation(rs[0], rs[1]))
        if ctrl.count >= 5 and wind.count >= 5:
            break
    if ctrl.count:
        report.add("pairs differing by a non-contractible loop (control)", "ribbon.endpoints",
                   ctrl.value, tol, ctrl.detail("pairs"), control=True, expect_pass=False)
    if wind.count:
        report.add("pairs whose loop winds around an endpoint (control)", "ribbon.endpoints",
                   wind.value, tol, wind.detail("pairs"), control=True, expect_pass=False)
    return report.finish()


def _separated_ribbon(patch: Patch, rng) -> Ribbon:
    fallback = None
    for _ in range(400):
        try:
            r = random_ribbon(patch, random_start(patch, rng), int(rng.integers(2, 7)), rng)
        except Stuck:
            continue
        if not r.endpoints_separated():
            continue
        if r.end.vertex in patch.star_vertices(r.start.vertex):
            fallback = fallback or r
            continue
        return r
    if fallback is None:
        raise GeometryInfeasible("no ribbon with separated endpoints")
    return fallback


def _distinguish_on(patch: Patch, G: FiniteGroup, irr, reps, rng, tol):
    gs = ground_space(patch, G)
    psi = gs[0].state
    r = _separated_ribbon(patch, rng)
    U = site_rep(patch, G, r.end)
    projs = [U(central_projector(D)) for D in irr]
    probs = np.zeros((len(irr), len(irr)))
    excited = []
    for i, D in enumerate(reps):
        amps = np.zeros((psi.amps.shape[0], D.dim), dtype=complex)
        amps[:, 0] = psi.amps
        st = Multiplet(r, D).apply(State(psi.frame, amps, psi.codes))
        nrm = st.vdot(st).real
        for k, P in enumerate(projs):
            probs[i, k] = st.vdot(P.apply_state(st)).real / nrm
        excited.append(st)
    outcome = probs.argmax(axis=1)
    delta = float(np.max(np.abs(probs.max(axis=1) - 1.0)))
    unique = len(set(outcome.tolist())) == len(irr)
    # orthogonality after projecting onto the charge of the first state
    ortho = 0.0
    for i in range(len(irr)):
        P = projs[outcome[i]]
        a = P.apply_state(excited[i])
        for j in range(len(irr)):
            if j != i:
                b = P.apply_state(excited[j])
                ortho = max(ortho, float(np.max(np.abs(_cross(a, b)), initial=0.0)))
    # trivial irrep and locality of the excitations
    vac = excited[0].difference(State(psi.frame, psi.amps[:, None], psi.codes))
    ends_v = {r.start.vertex, r.end.vertex}
    ends_f = {r.start.face, r.end.face}
    terms = ([vertex_projector(patch, G, v) for v in range(patch.n_vertices) if v not in ends_v]
             + [face_projector(patch, G, f) for f in range(patch.n_faces) if f not in ends_f])
    local = 0.0
    for st in excited:
        nrm = st.vdot(st).real
        for A in terms:
            local = max(local, abs(st.vdot(A.apply_state(st)) / nrm - 1.0))
    passed = delta <= tol and unique and ortho <= tol
    return {"probs": probs, "outcome": outcome, "delta": delta, "unique": unique, "ortho": ortho,
            "vacuum": vac, "local": local, "passed": passed, "ribbon_length": len(r)}


def _cross(a: State, b: State) -> np.ndarray:
    """Inner products ``<a_i | b_j>`` between the vector components of two states."""
    sa, sb = a.to_sparse(), b.to_sparse()
    _, ia, ib = np.intersect1d(sa.codes, sb.codes, assume_unique=True, return_indices=True)
    xa = sa.amps.reshape(sa.amps.shape[0], int(np.prod(sa.amps.shape[1:])))[ia]
    xb = sb.amps.reshape(sb.amps.shape[0], int(np.prod(sb.amps.shape[1:])))[ib]
    return xa.conj().T @ xb


def anyon_distinguishability(group: FiniteGroup, patch: Patch | None = None, seed=0,
                             tol: float = 1e-9, sizes=((2, 2), (2, 3), (3, 3), (3, 4)),
                             corrupt: str | None = None) -> SuiteReport:
    """Charge measurement at the end of a ribbon identifies every excitation type.

    For each irrep ``D`` the first column of ``F_rho^D`` is applied to a
    ground state and the probabilities of the central projectors of D(G),
    represented at the end site, are measured.  Each type must give a
    certain outcome, distinct types distinct outcomes, and the projected
    states of different types must be orthogonal.  Without ``patch`` the
    tori in ``sizes`` are tried in order and the smallest passing one is
    recorded.
    """
    _check_corrupt(corrupt, ("irrep",), "distinguish")
    G = group
    rng = _rng(seed)
    irr = irreps_of_double(G)
    reps = [perturb_irrep(D, rng) for D in irr] if corrupt == "irrep" else irr
    candidates = [patch] if patch is not None else [make_patch(w, h, "torus") for w, h in sizes]
    report = SuiteReport(suite="distinguish", group=G.name, patch=candidates[0].descriptor(),
                         seed=seed if isinstance(seed, int) else 0)
    tried = {}
    res, chosen = None, None
    for p in candidates:
        try:
            res = _distinguish_on(p, G, irr, reps, rng, tol)
        except DimensionBudgetExceeded as exc:
            tried[p.descriptor()] = f"over budget: {exc}"
            continue
        tried[p.descriptor()] = "pass" if res["passed"] else "fail"
        chosen = p
        if res["passed"]:
            break
    if res is None:
        raise DimensionBudgetExceeded("no candidate torus fits the budget")
    report.patch = chosen.descriptor()
    report.add("each excitation type gives a certain charge outcome", "charge.measurement",
               res["delta"], tol, f"{len(irr)} types")
    report.add_bool("outcomes of different types are distinct", "charge.measurement", res["unique"],
                    f"outcomes {res['outcome'].tolist()}")
    report.add("charge-projected states of different types are orthogonal", "charge.measurement",
               res["ortho"], tol)
    report.add("trivial type leaves the ground state unchanged", "charge.measurement", res["vacuum"], tol)
    report.add("excitations are invisible away from the ribbon ends", "charge.locality", res["local"], tol)
    report.data["smallest_passing_torus"] = chosen.descriptor() if res["passed"] else None
    report.data["tried"] = tried
    report.data["outcome_probabilities"] = np.round(res["probs"], 12)
    report.data["outcomes"] = res["outcome"]
    return report.finish()
