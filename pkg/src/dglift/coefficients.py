"""Graded coefficient rings with exact arithmetic.

A base ring is either a ground field (the rationals, or a prime field) or a
graded quotient k[x_1..x_m]/I of a polynomial ring by a *monomial* ideal,
with every generator carrying a positive internal degree.  Monomial ideals
keep normal forms trivial: a monomial is zero exactly when some relation
monomial divides it, so reduction is a divisibility test and needs no
Groebner machinery.  All graded pieces are finite dimensional over the
ground field, which is what makes every downstream solve exact and finite.

Monomials are exponent tuples aligned with the generator list.  The fixed
monomial order is descending lexicographic on exponent vectors (so x-pure
monomials print and enumerate before y-pure ones); every basis listed by
this module is ordered that way.
"""

from fractions import Fraction

from . import linalg
from .errors import ConstructionError


class ModP:
    """An element of the prime field Z/p, normalised to 0 <= v < p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed characteristics %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.v + other.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.v - other.v, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        return ModP(other.v - self.v, self.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.v * other.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return str(self.v)


class RationalField:
    """The field of rationals; scalars are Fractions."""

    char = 0
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, n):
        return Fraction(n)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p; scalars are ModP values."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ConstructionError("characteristic %r is not prime" % (p,))
        self.char = p
        self.name = "FF(%d)" % p
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def of(self, n):
        return ModP(n, self.char)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("FF", self.char))

    def __repr__(self):
        return self.name


QQ = RationalField()


def mono_divides(small, big):
    return all(a <= b for a, b in zip(small, big))


def ring_mono_key(exps):
    # descending lexicographic; ties cannot occur
    return tuple(-e for e in exps)


class BaseRing:
    """k[x_1..x_m]/(monomial relations) with positive generator degrees.

    With no generators this is just the ground field concentrated in
    internal degree 0.  Relation monomials are reduced to the minimal
    generating set (pairwise non-divisible) at construction.
    """

    def __init__(self, field, gens=(), degrees=(), relations=()):
        self.field = field
        self.gens = tuple(gens)
        self.degrees = tuple(degrees)
        if len(self.gens) != len(set(self.gens)):
            raise ConstructionError("duplicate ring generator")
        if len(self.degrees) != len(self.gens):
            raise ConstructionError("need one internal degree per generator")
        for name, d in zip(self.gens, self.degrees):
            if not isinstance(d, int) or d <= 0:
                raise ConstructionError(
                    "generator %s has non-positive internal degree %r" % (name, d))
        rels = []
        for rel in relations:
            rel = tuple(rel)
            if len(rel) != len(self.gens) or any(e < 0 for e in rel) or not any(rel):
                raise ConstructionError("relation %r is not a monomial in the generators" % (rel,))
            rels.append(rel)
        # keep only the divisibility-minimal relations, deduplicated
        rels = sorted(set(rels), key=ring_mono_key)
        minimal = [r for r in rels
                   if not any(s != r and mono_divides(s, r) for s in rels)]
        self.relations = tuple(minimal)
        self._basis_cache = {}

    @property
    def is_field(self):
        return not self.gens

    def __eq__(self, other):
        return (isinstance(other, BaseRing)
                and self.field == other.field
                and self.gens == other.gens
                and self.degrees == other.degrees
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.field, self.gens, self.degrees, self.relations))

    def __repr__(self):
        if self.is_field:
            return self.field.name
        gens = ", ".join("%s:%d" % (n, d) for n, d in zip(self.gens, self.degrees))
        txt = "%s[%s]" % (self.field.name, gens)
        if self.relations:
            txt += "/(%s)" % ", ".join(self.render_mono(r) for r in self.relations)
        return txt

    # -- monomial arithmetic ------------------------------------------------

    def mono_weight(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def mono_reduced(self, exps):
        return not any(mono_divides(rel, exps) for rel in self.relations)

    def mono_mul(self, a, b):
        prod = tuple(x + y for x, y in zip(a, b))
        return prod if self.mono_reduced(prod) else None

    def render_mono(self, exps):
        parts = []
        for name, e in zip(self.gens, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    # -- elements ------------------------------------------------------------

    @property
    def unit_mono(self):
        return (0,) * len(self.gens)

    def element(self, coeffs):
        return RingElement(self, coeffs)

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return RingElement(self, {self.unit_mono: self.field.one})

    def scalar(self, n):
        return RingElement(self, {self.unit_mono: self.field.of(n)})

    def gen(self, name):
        if name not in self.gens:
            raise KeyError("no ring generator named %r" % name)
        i = self.gens.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.gens)))
        return RingElement(self, {exps: self.field.one})

    def graded_basis(self, w):
        """Ordered monomial basis of the internal-degree-w piece."""
        if w < 0:
            return []
        try:
            return self._basis_cache[w]
        except KeyError:
            pass
        found = []

        def extend(prefix, i, remaining):
            if i == len(self.gens):
                if remaining == 0:
                    exps = tuple(prefix)
                    if self.mono_reduced(exps):
                        found.append(exps)
                return
            d = self.degrees[i]
            for e in range(remaining // d + 1):
                extend(prefix + [e], i + 1, remaining - e * d)

        extend([], 0, w)
        found.sort(key=ring_mono_key)
        self._basis_cache[w] = found
        return found


class RingElement:
    """A normal-form element: monomial exponent tuple -> nonzero scalar."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        clean = {}
        for exps, c in coeffs.items():
            if c and ring.mono_reduced(exps):
                clean[exps] = c
        self.coeffs = clean

    def _check(self, other):
        if self.ring != other.ring:
            raise ConstructionError("elements of different base rings")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            s = out.get(exps, self.ring.field.zero) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return RingElement(self.ring, out)

    def __neg__(self):
        return RingElement(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            self._check(other)
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    prod = self.ring.mono_mul(e1, e2)
                    if prod is None:
                        continue
                    s = out.get(prod, self.ring.field.zero) + c1 * c2
                    if s:
                        out[prod] = s
                    else:
                        out.pop(prod, None)
            return RingElement(self.ring, out)
        if isinstance(other, int):
            other = self.ring.field.of(other)
        if isinstance(other, (Fraction, ModP)):
            return RingElement(self.ring, {e: c * other for e, c in self.coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def scale(self, scalar):
        return RingElement(self.ring, {e: c * scalar for e, c in self.coeffs.items()})

    def is_homogeneous(self):
        return len({self.ring.mono_weight(e) for e in self.coeffs}) <= 1

    def weight(self):
        """Internal degree of a homogeneous element (0 for the zero element)."""
        weights = {self.ring.mono_weight(e) for e in self.coeffs}
        if not weights:
            return 0
        if len(weights) > 1:
            raise ConstructionError("element is not internally homogeneous")
        return weights.pop()

    def weight_components(self):
        parts = {}
        for e, c in self.coeffs.items():
            parts.setdefault(self.ring.mono_weight(e), {})[e] = c
        return {w: RingElement(self.ring, d) for w, d in sorted(parts.items())}

    def sorted_terms(self):
        return sorted(self.coeffs.items(),
                      key=lambda item: (self.ring.mono_weight(item[0]),
                                        ring_mono_key(item[0])))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = self.ring.render_mono(exps)
            parts.append(render_scalar_mono(c, mono))
        return join_signed(parts)


def render_scalar_mono(scalar, mono):
    """Deterministic `scalar*mono` with 1 and -1 elided; may start with '-'."""
    txt = str(scalar)
    if txt == "1":
        return mono
    if txt == "-1":
        return "-" + mono
    if mono == "1":
        return txt
    return "%s*%s" % (txt, mono)


def join_signed(parts):
    """Join pre-rendered terms with ' + ' / ' - ' by their leading sign."""
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def multiplication_block(ring, a, w_src):
    """The block of multiplication by the homogeneous element a on R_{w_src}."""
    wa = a.weight()
    src = ring.graded_basis(w_src)
    dst = ring.graded_basis(w_src + wa)
    pos = {m: i for i, m in enumerate(dst)}
    rows = [[ring.field.zero] * len(src) for _ in dst]
    for j, m in enumerate(src):
        image = RingElement(ring, {m: ring.field.one}) * a
        for e, c in image.coeffs.items():
            rows[pos[e]][j] = c
    return linalg.BlockMatrix(rows, [ring.render_mono(m) for m in src],
                              [ring.render_mono(m) for m in dst], ring.field)


def principal_intersection_dim(ring, a, b, w):
    """dim of (aR cap bR) in internal degree w, for homogeneous a, b.

    Computed from the rank identity dim(U cap V) = dim U + dim V - dim(U+V)
    applied to the column spaces of the two multiplication blocks.
    """
    blk_a = multiplication_block(ring, a, w - a.weight())
    blk_b = multiplication_block(ring, b, w - b.weight())
    dim_a = linalg.rank(blk_a)
    dim_b = linalg.rank(blk_b)
    joint = linalg.BlockMatrix(
        [ra + rb for ra, rb in zip(blk_a.rows, blk_b.rows)],
        blk_a.src_labels + blk_b.src_labels, blk_a.dst_labels, ring.field)
    return dim_a + dim_b - linalg.rank(joint)
