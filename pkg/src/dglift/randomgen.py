"""Seeded random generators for property checks.

Everything here drives the invariant suites (`selfcheck`) and the test
suite.  Generation is deterministic given the Random instance: random
homogeneous elements are sampled from the exact bidegree bases with small
scalars, random free extensions adjoin variables whose differentials are
sampled from the kernel of d on the appropriate block (so they are cycles
by construction), and random semifree modules build their structure
columns out of cycles of the partially built module, which is exactly the
componentwise form of d^2 = 0.
"""

from . import linalg
from .coefficients import BaseRing, PrimeField, QQ, RingElement
from .envelope import (DiagonalElement, EnvelopeElement, diagonal_block_keys,
                       envelope_basis)
from .free_dga import AlgebraElement, FreeDGAlgebra, Variable
from .semifree import SemifreeModule, ModuleElement


def random_scalar(rng, field, nonzero=False):
    lo = 1 if nonzero else -2
    return field.of(rng.choice([n for n in range(lo, 3) if n or not nonzero]))


def standard_rings():
    return [
        BaseRing(QQ),
        BaseRing(QQ, ("x", "y"), (1, 1), [(1, 1)]),
        BaseRing(QQ, ("x", "y"), (1, 1), [(2, 0), (1, 1)]),
        BaseRing(PrimeField(5), ("x", "y"), (1, 2), [(3, 0)]),
    ]


def random_ring_element(rng, ring, w):
    coeffs = {}
    for m in ring.graded_basis(w):
        c = random_scalar(rng, ring.field)
        if c:
            coeffs[m] = c
    return RingElement(ring, coeffs)


def random_algebra_element(rng, B, n, w, density=0.7):
    coeffs = {}
    for mono, rm in B.bidegree_basis(n, w):
        if rng.random() > density:
            continue
        c = random_scalar(rng, B.field)
        if c:
            prev = coeffs.get(mono)
            add = RingElement(B.ring, {rm: c})
            coeffs[mono] = add if prev is None else prev + add
    return AlgebraElement(B, coeffs)


def random_envelope_element(rng, B, n, w, density=0.6):
    coeffs = {}
    for m1, m2, rm in envelope_basis(B, n, w):
        if rng.random() > density:
            continue
        c = random_scalar(rng, B.field)
        if c:
            key = (m1, m2)
            add = RingElement(B.ring, {rm: c})
            prev = coeffs.get(key)
            coeffs[key] = add if prev is None else prev + add
    return EnvelopeElement(B, coeffs)


def random_diagonal_element(rng, B, n, w, density=0.6):
    coeffs = {}
    for m1, m2, rm in diagonal_block_keys(B, n, w):
        if rng.random() > density:
            continue
        c = random_scalar(rng, B.field)
        if c:
            key = (m1, m2)
            add = RingElement(B.ring, {rm: c})
            prev = coeffs.get(key)
            coeffs[key] = add if prev is None else prev + add
    return DiagonalElement(B, coeffs)


def _random_kernel_element(rng, block, field):
    basis = linalg.kernel_basis(block)
    if not basis:
        return None
    total = [field.zero] * len(block.src_labels)
    hit = False
    for vec in basis:
        c = random_scalar(rng, field)
        if c:
            hit = True
            total = [t + c * v for t, v in zip(total, vec)]
    return total if hit else None


def random_algebra(rng, ring, max_vars=3, max_degree=3):
    """A random free extension, built one cycle-killing variable at a time."""
    names = ("X", "Y", "Z", "W")
    count = rng.randint(1, max_vars)
    vars_so_far, diff_data = [], {}
    for k in range(count):
        degree = rng.randint(1, max_degree)
        partial = FreeDGAlgebra(ring, vars_so_far, diff_data)
        choice = None
        weights = list(range(1, 5))
        rng.shuffle(weights)
        for w in weights:
            block = partial.diff_block(degree - 1, w)
            if not block.src_labels:
                continue
            coords = _random_kernel_element(rng, block, ring.field)
            if coords is None:
                continue
            coeffs = {}
            for c, (mono, rm) in zip(coords, partial.bidegree_basis(degree - 1, w)):
                if not c:
                    continue
                mono = mono + (0,)  # pad for the variable being adjoined
                add = RingElement(ring, {rm: c})
                prev = coeffs.get(mono)
                coeffs[mono] = add if prev is None else prev + add
            if coeffs:
                choice = (w, coeffs)
                break
        name = names[k]
        if choice is None:
            vars_so_far = vars_so_far + [Variable(name, degree, degree)]
        else:
            w, coeffs = choice
            vars_so_far = vars_so_far + [Variable(name, degree, w)]
            diff_data = dict(diff_data)
            diff_data[name] = coeffs
        # earlier variables' diffs need padding to the new arity
        diff_data = {nm: {m + (0,) * (len(vars_so_far) - len(m)): c
                          for m, c in data.items()}
                     for nm, data in diff_data.items()}
        vars_so_far = [Variable(v.name, v.degree, v.weight) for v in vars_so_far]
    return FreeDGAlgebra(ring, vars_so_far, diff_data)


def example_algebras():
    """The two shipped free extensions (liftable and non-liftable settings)."""
    out = []
    for ring in (BaseRing(QQ, ("x", "y"), (1, 1), [(1, 1)]),
                 BaseRing(QQ, ("x", "y"), (1, 1), [(2, 0), (1, 1)])):
        x, y = ring.gen("x"), ring.gen("y")
        out.append(FreeDGAlgebra(
            ring, [Variable("X", 1, 1), Variable("Y", 2, 2)],
            {"X": {(0, 0): x}, "Y": {(1, 0): y}}))
    return out


def random_module(rng, B, max_rank=4, max_degree=5, max_weight=5):
    """A random validated semifree module over B.

    Column lam must be a cycle of the module built so far at bidegree
    (|e_lam| - 1, w_lam); sampling from that kernel guarantees d^2 = 0.
    """
    rank = rng.randint(1, max_rank)
    labels, degrees, weights, structure = [], [], [], {}
    for k in range(rank):
        label = "e%d" % (k + 1)
        if not labels:
            labels.append(label)
            degrees.append(rng.randint(0, 2))
            weights.append(rng.randint(0, 2))
            continue
        partial = SemifreeModule(B, labels, degrees, weights,
                                 {(labels[i], labels[j]): entry
                                  for (i, j), entry in structure.items()})
        degree = rng.randint(min(degrees), max_degree)
        column = None
        weight_choices = list(range(min(weights), max_weight + 1))
        rng.shuffle(weight_choices)
        for w in weight_choices:
            basis = partial.basis_of_bidegree(degree - 1, w)
            if not basis:
                continue
            block = partial.diff_block(degree - 1, w)
            coords = _random_kernel_element(rng, block, B.field)
            if coords is None:
                continue
            per_label = {}
            for c, (lab, mono, rm) in zip(coords, basis):
                if not c:
                    continue
                slot = per_label.setdefault(lab, {})
                prev = slot.get(mono)
                add = RingElement(B.ring, {rm: c})
                slot[mono] = add if prev is None else prev + add
            entries = {lab: AlgebraElement(B, data)
                       for lab, data in per_label.items()}
            entries = {lab: el for lab, el in entries.items() if el}
            if entries:
                column = (w, entries)
                break
        labels.append(label)
        if column is None:
            degrees.append(degree)
            weights.append(rng.randint(0, max_weight))
        else:
            w, entries = column
            degrees.append(degree)
            weights.append(w)
            for lab, el in entries.items():
                structure[(labels.index(lab), len(labels) - 1)] = el
    return SemifreeModule(B, labels, degrees, weights,
                          {(labels[i], labels[j]): entry
                           for (i, j), entry in structure.items()})


def random_module_element(rng, N, n, w, density=0.7):
    coeffs = {}
    for lab, mono, rm in N.basis_of_bidegree(n, w):
        if rng.random() > density:
            continue
        c = random_scalar(rng, N.algebra.field)
        if not c:
            continue
        slot = coeffs.setdefault(lab, {})
        prev = slot.get(mono)
        add = RingElement(N.algebra.ring, {rm: c})
        slot[mono] = add if prev is None else prev + add
    return ModuleElement(N, {lab: AlgebraElement(N.algebra, data)
                             for lab, data in coeffs.items()})


def random_gamma(rng, N, density=0.6):
    """A random connection family: one block element per basis label."""
    gamma = {}
    for i, lab in enumerate(N.labels):
        keys = N.tensor_keys(N.degrees[i], N.weights[i])
        coords = [random_scalar(rng, N.algebra.field)
                  if rng.random() <= density else N.algebra.field.zero
                  for _ in keys]
        gamma[lab] = N.tensor_unvec(coords, keys)
    return gamma


def random_homogeneous_bidegree(rng, max_n=6, max_w=6):
    n = rng.randint(0, max_n)
    return n, rng.randint(0, max_w)


def random_partial_solution(rng, N):
    """Solve the lifting equations label by label with random choices.

    Returns (gamma, blocked): gamma solves d(gamma_lam) = xi_lam for every
    label before `blocked`, and for all labels when blocked is None.  The
    choice at each step is randomised inside the full solution space, so
    repeated runs explore genuinely different partial solutions.  A blocked
    greedy run does not prove anything (an earlier choice may be at fault);
    an unblocked one is a lifting witness.
    """
    from .obstruction import criterion_rhs
    gamma = {}
    for i, lab in enumerate(N.labels):
        xi = criterion_rhs(N, gamma, lab)
        src_keys = N.tensor_keys(N.degrees[i], N.weights[i])
        block = N.tensor_diff_block(N.degrees[i], N.weights[i])
        target = N.tensor_vec(xi, N.tensor_keys(N.degrees[i] - 1, N.weights[i]))
        res = linalg.linear_solve(block, target)
        if res.solution is None:
            return gamma, lab
        coords = res.solution
        for vec in linalg.kernel_basis(block):
            c = random_scalar(rng, N.algebra.field)
            if c:
                coords = [a + c * b for a, b in zip(coords, vec)]
        gamma[lab] = N.tensor_unvec(coords, src_keys)
    return gamma, None
