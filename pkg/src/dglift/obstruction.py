"""Obstruction calculus and the naive-lifting decision procedure.

For a semifree module N with d(e_lam) = sum e_mu b[mu][lam], the
obstruction map sends

    e_lam -> sum_mu e_mu (x) delta(b[mu][lam])   in N (x) J,

and equals sigma_N d rho_N, the failure of the graded section rho_N to be
a chain map.  N admits a naive lift exactly when there is a family
gamma = {gamma_lam}, with gamma_lam in (N (x) J) of e_lam's bidegree,
solving

    d(gamma_lam) = sum_{mu<lam} (gamma_mu b[mu][lam] + e_mu (x) delta(b[mu][lam])).

The decision runs by one of three methods:

* trivial      -- zero differential: gamma = 0 works outright;
* rank2        -- two basis elements with d(e') = e b: since J_0 = 0
                  forces gamma_e = 0, solvability reduces to delta(b)
                  being a boundary in J, decided in one bidegree block;
* global       -- all gamma coordinates are unknowns of one simultaneous
                  linear system over the ground field, assembled from the
                  bidegree blocks of N (x) J and solved by deterministic
                  elimination (free variables pinned to zero).

The system is solved globally rather than basis element by basis element:
a greedy choice of gamma_mu can block a later equation even when a
simultaneous solution exists.  LIFTABLE reports carry the gamma family;
NOT_LIFTABLE reports carry a machine-checkable inconsistency certificate
(a left null functional of the system with nonzero pairing against the
right-hand side).
"""

from dataclasses import dataclass

from . import linalg
from .envelope import (DiagonalElement, delta, diagonal_basis,
                       diagonal_block_keys, diagonal_diff_block, diagonal_vec)
from .errors import ConstructionError
from .semifree import SemifreeModule, TensorJElement

LIFTABLE = "LIFTABLE"
NOT_LIFTABLE = "NOT_LIFTABLE"

METHOD_TRIVIAL = "trivial"
METHOD_RANK2 = "rank2-corollary"
METHOD_GLOBAL = "global-solve"


def obstruction_values(N: SemifreeModule, mode="formula") -> dict:
    """The obstruction map on the basis, as {label: element of N (x) J}.

    mode "formula" reads the structure matrix directly; mode "splitting"
    computes sigma_N d rho_N.  The two agree exactly.
    """
    out = {}
    if mode == "formula":
        for j, lam in enumerate(N.labels):
            total = N.tensor_zero()
            for (i, jj), entry in N.structure.items():
                if jj == j:
                    total = total + TensorJElement(N, {N.labels[i]: delta(entry)})
            out[lam] = total
    elif mode == "splitting":
        for lam in N.labels:
            out[lam] = N.sigma_n(N.rho_n(N.gen(lam)).diff())
    else:
        raise ValueError("unknown mode %r" % mode)
    return out


def obstruction_apply(N: SemifreeModule, v, mode="formula") -> TensorJElement:
    """The obstruction map on a general element of N."""
    if mode == "splitting":
        return N.sigma_n(N.rho_n(v).diff())
    values = obstruction_values(N, mode)
    total = N.tensor_zero()
    for lab, b in v.coeffs.items():
        total = total + values[lab] * b
    return total


class Connection:
    """A degree-0 graded map N -> N (x) J with D(nb) = D(n)b + n (x) delta(b).

    Determined by its values gamma_lam = D(e_lam); the canonical connection
    of the chosen basis has all gamma_lam = 0.
    """

    def __init__(self, module: SemifreeModule, gamma=None):
        self.module = module
        self.gamma = {}
        gamma = gamma or {}
        for lab in module.labels:
            g = gamma.get(lab)
            if g is None:
                g = module.tensor_zero()
            if g:
                i = module.index[lab]
                if g.bidegree() != (module.degrees[i], module.weights[i]):
                    raise ConstructionError(
                        "gamma for %s has bidegree %r, expected %r"
                        % (lab, g.bidegree(),
                           (module.degrees[i], module.weights[i])))
            self.gamma[lab] = g

    def __call__(self, v) -> TensorJElement:
        N = self.module
        total = N.tensor_zero()
        for lab, b in v.coeffs.items():
            total = total + self.gamma[lab] * b + TensorJElement(N, {lab: delta(b)})
        return total

    def __sub__(self, other):
        """The difference as a plain B-linear graded map (label values)."""
        return {lab: self.gamma[lab] - other.gamma[lab] for lab in self.module.labels}


def canonical_connection(N: SemifreeModule) -> Connection:
    return Connection(N, {})


def psi_apply(D: Connection, v) -> TensorJElement:
    """(d D - D d)(v), evaluated directly on the element."""
    return D(v).diff() - D(v.diff())


def psi_values(D: Connection) -> dict:
    return {lab: psi_apply(D, D.module.gen(lab)) for lab in D.module.labels}


def criterion_rhs(N: SemifreeModule, gamma: dict, lam: str) -> TensorJElement:
    """sum_{mu<lam} (gamma_mu b[mu][lam] + e_mu (x) delta(b[mu][lam]))."""
    j = N.index[lam]
    total = N.tensor_zero()
    for (i, jj), entry in N.structure.items():
        if jj == j:
            mu = N.labels[i]
            g = gamma.get(mu)
            if g:
                total = total + g * entry
            total = total + TensorJElement(N, {mu: delta(entry)})
    return total


def verify_witness(N: SemifreeModule, gamma: dict) -> bool:
    """Exact check of the defining identity of a lifting family."""
    for lam in N.labels:
        g = gamma.get(lam, N.tensor_zero())
        if g.diff() != criterion_rhs(N, gamma, lam):
            return False
    return True


@dataclass
class ObstructionReport:
    decision: str
    method: str
    obstruction: dict          # label -> TensorJElement
    witness: dict | None       # label -> TensorJElement when LIFTABLE
    certificate: dict | None   # serialisable data when NOT_LIFTABLE

    @property
    def liftable(self):
        return self.decision == LIFTABLE


def _render_functional(labels, coords):
    return [{"row": lab, "value": str(c)} for lab, c in zip(labels, coords) if c]


def _check_rank2(N: SemifreeModule):
    """Boundary-membership test for a two-element basis with d(e') = e b.

    Valid in both directions because B_0 = R makes J_0 = 0, which pins
    gamma_e to zero and gamma_e' to e (x) c.
    """
    B = N.algebra
    b = N.structure.get((0, 1), B.zero())
    target = delta(b)
    n, w = target.bidegree() if target else (N.degrees[1] - N.degrees[0] - 1,
                                             N.weights[1] - N.weights[0])
    matrix = diagonal_diff_block(B, n + 1, w)
    keys = diagonal_block_keys(B, n, w)
    vec = diagonal_vec(target, keys)
    result = linalg.linear_solve(matrix, vec)
    if result.consistent:
        src_basis = diagonal_basis(B, n + 1, w)
        c = None
        for s, el in zip(result.solution, src_basis):
            term = el * s
            c = term if c is None else c + term
        if c is None:
            c = DiagonalElement(B, {})
        if N.degrees[0] % 2:
            c = -c
        witness = {N.labels[0]: N.tensor_zero(),
                   N.labels[1]: TensorJElement(N, {N.labels[0]: c})}
        return witness, None
    cert = {
        "kind": "boundary-membership",
        "source_bidegree": [n + 1, w],
        "target_bidegree": [n, w],
        "source_dim": len(matrix.src_labels),
        "target_dim": len(matrix.dst_labels),
        "rank": linalg.rank(matrix),
        "target": str(target),
        "null_functional": _render_functional(matrix.dst_labels,
                                              result.certificate.null_row),
        "pairing": str(result.certificate.pairing),
    }
    return None, cert


def _assemble_global_system(N: SemifreeModule):
    """One simultaneous linear system in all gamma coordinates.

    Unknown blocks: for each lam, the (|e_lam|, w_lam) block of N (x) J.
    Equation blocks: for each lam, the block one homological degree lower.
    The column of an unknown basis element t of gamma_mu holds d(t) in
    equation mu and -(t . b[mu][lam]) in every later equation lam.
    """
    field = N.algebra.field
    unk_keys, unk_basis, unk_offsets = [], [], []
    for i, lab in enumerate(N.labels):
        unk_offsets.append(len(unk_keys))
        keys = N.tensor_keys(N.degrees[i], N.weights[i])
        unk_keys.extend((lab, k) for k in keys)
        unk_basis.extend(N.tensor_basis(N.degrees[i], N.weights[i]))
    eq_keys, eq_offsets, eq_pos = [], [], []
    for i, lab in enumerate(N.labels):
        eq_offsets.append(len(eq_keys))
        keys = N.tensor_keys(N.degrees[i] - 1, N.weights[i])
        eq_pos.append({k: idx for idx, k in enumerate(keys)})
        eq_keys.extend((lab, k) for k in keys)
    rows = [[field.zero] * len(unk_keys) for _ in eq_keys]
    col = 0
    for i, lab in enumerate(N.labels):
        n_keys = len(N.tensor_keys(N.degrees[i], N.weights[i]))
        for local in range(n_keys):
            t = unk_basis[unk_offsets[i] + local]
            image = N.tensor_vec(t.diff(),
                                 N.tensor_keys(N.degrees[i] - 1, N.weights[i]),
                                 eq_pos[i])
            for r, s in enumerate(image):
                if s:
                    rows[eq_offsets[i] + r][col] = s
            for (mu, jj), entry in N.structure.items():
                if mu == i:
                    moved = t * entry
                    image2 = N.tensor_vec(moved,
                                          N.tensor_keys(N.degrees[jj] - 1,
                                                        N.weights[jj]),
                                          eq_pos[jj])
                    for r, s in enumerate(image2):
                        if s:
                            rows[eq_offsets[jj] + r][col] = -s
            col += 1
    rhs = [field.zero] * len(eq_keys)
    for i, lam in enumerate(N.labels):
        target = criterion_rhs(N, {}, lam)
        vec = N.tensor_vec(target, N.tensor_keys(N.degrees[i] - 1, N.weights[i]),
                           eq_pos[i])
        for r, s in enumerate(vec):
            rhs[eq_offsets[i] + r] = s
    src_labels = ["γ_%s[%s]" % (lab, N.tensor_key_label(k)) for lab, k in unk_keys]
    dst_labels = ["eq_%s[%s]" % (lab, N.tensor_key_label(k)) for lab, k in eq_keys]
    matrix = linalg.BlockMatrix(rows, src_labels, dst_labels, field)
    return matrix, rhs, unk_offsets


def _check_global(N: SemifreeModule):
    matrix, rhs, unk_offsets = _assemble_global_system(N)
    result = linalg.linear_solve(matrix, rhs)
    if result.consistent:
        witness = {}
        for i, lab in enumerate(N.labels):
            keys = N.tensor_keys(N.degrees[i], N.weights[i])
            start = unk_offsets[i]
            coords = result.solution[start:start + len(keys)]
            witness[lab] = N.tensor_unvec(coords, keys)
        return witness, None
    cert = {
        "kind": "gamma-system",
        "unknowns": len(matrix.src_labels),
        "equations": len(matrix.dst_labels),
        "rank": linalg.rank(matrix),
        "null_functional": _render_functional(matrix.dst_labels,
                                              result.certificate.null_row),
        "pairing": str(result.certificate.pairing),
    }
    return None, cert


def check_lift(N: SemifreeModule, method="auto") -> ObstructionReport:
    """Decide whether N lifts naively, with a verifiable witness either way."""
    obstruction = obstruction_values(N)
    if method not in ("auto", "trivial", "rank2", "global"):
        raise ValueError("unknown method %r" % method)
    if method in ("auto", "trivial") and not N.structure:
        witness = {lab: N.tensor_zero() for lab in N.labels}
        return ObstructionReport(LIFTABLE, METHOD_TRIVIAL, obstruction, witness, None)
    if method == "trivial":
        raise ValueError("trivial method needs a zero differential")
    if method == "rank2" or (method == "auto" and N.rank == 2):
        if N.rank != 2:
            raise ValueError("rank2 method needs exactly two basis elements")
        witness, cert = _check_rank2(N)
        tag = METHOD_RANK2
    else:
        witness, cert = _check_global(N)
        tag = METHOD_GLOBAL
    if witness is not None:
        return ObstructionReport(LIFTABLE, tag, obstruction, witness, None)
    return ObstructionReport(NOT_LIFTABLE, tag, obstruction, None, cert)


def verify_certificate(N: SemifreeModule, report: ObstructionReport) -> bool:
    """Re-run the certified inconsistency: u . A = 0 and u . rhs != 0."""
    cert = report.certificate
    if cert is None:
        return False
    field = N.algebra.field
    if cert["kind"] == "boundary-membership":
        b = N.structure[(0, 1)]
        target = delta(b)
        n, w = cert["target_bidegree"]
        matrix = diagonal_diff_block(N.algebra, n + 1, w)
        rhs = diagonal_vec(target, diagonal_block_keys(N.algebra, n, w))
    elif cert["kind"] == "gamma-system":
        matrix, rhs, _ = _assemble_global_system(N)
    else:
        return False
    by_row = {lab: field.zero for lab in matrix.dst_labels}
    for item in cert["null_functional"]:
        by_row[item["row"]] = _parse_scalar(field, item["value"])
    u = [by_row[lab] for lab in matrix.dst_labels]
    ncols = len(matrix.src_labels)
    for jj in range(ncols):
        s = sum((ui * matrix.rows[i][jj] for i, ui in enumerate(u)), field.zero)
        if s:
            return False
    pairing = sum((ui * t for ui, t in zip(u, rhs)), field.zero)
    return bool(pairing) and str(pairing) == cert["pairing"]


def _parse_scalar(field, text):
    if "/" in text:
        num, den = text.split("/")
        return field.of(int(num)) / field.of(int(den))
    return field.of(int(text))
