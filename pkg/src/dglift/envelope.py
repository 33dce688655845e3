"""The enveloping algebra B^e = B^o (x) B and its diagonal ideal J.

Elements of B^e are stored as maps (m1, m2) -> ring coefficient over pairs
of algebra monomials, read as m1^o (x) m2 . r; coefficients are central so
one ring element per pair suffices.  The twisted product is

    (b1^o (x) b2)(b1'^o (x) b2') = (-1)^{|b1'|(|b1|+|b2|)} (b1' b1)^o (x) b2 b2'

and the differential acts by d(b1)^o (x) b2 + (-1)^{|b1|} b1^o (x) d(b2),
where the opposite factor differentiates through d(b^o) = (d b)^o.

The multiplication map pi(b1^o (x) b2) = b1 b2 splits off B via
rho(b) = 1^o (x) b, and J = ker(pi) is spanned by the corrections

    sigma(m1^o (x) m2) = m1^o (x) m2 - 1^o (x) m1 m2,   m1 != 1.

DiagonalElement stores members of J by their coordinates against exactly
this family ("sigma coordinates"); for an element already in J these are
just its raw coefficients at pairs with m1 != 1, so conversion both ways
is lossless.  The universal derivation delta(b) = b^o (x) 1 - 1^o (x) b
lands in J and, in sigma coordinates, simply re-reads the monomials of b
as pairs (m, 1).
"""

from fractions import Fraction

from . import linalg
from .coefficients import ModP, RingElement, join_signed, ring_mono_key
from .errors import ConstructionError
from .free_dga import AlgebraElement


def _merge(out, key, add):
    s = out.get(key)
    s = add if s is None else s + add
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def render_pair_terms(algebra, coeffs):
    """Deterministic `m1^o(x)m2 . r` rendering shared by B^e and J."""
    if not coeffs:
        return "0"
    items = sorted(coeffs.items(),
                   key=lambda kv: (algebra.mono_key(kv[0][0]),
                                   algebra.mono_key(kv[0][1])))
    parts = []
    for (m1, m2), c in items:
        left = algebra.render_mono(m1)
        if "*" in left or "^" in left:
            left = "(%s)" % left
        pair = "%s^o⊗%s" % (left, algebra.render_mono(m2))
        for rm, s in c.sorted_terms():
            r_txt = algebra.ring.render_mono(rm)
            txt = str(s)
            body = pair if r_txt == "1" else "%s · %s" % (pair, r_txt)
            if txt == "1":
                parts.append(body)
            elif txt == "-1":
                parts.append("-" + body)
            else:
                parts.append("%s·%s" % (txt, body))
    return join_signed(parts)


class EnvelopeElement:
    """An element of B^e as a pair-indexed coefficient map."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ConstructionError("envelope elements over different algebras")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, EnvelopeElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _merge(out, k, c)
        return EnvelopeElement(self.algebra, out)

    def __neg__(self):
        return EnvelopeElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        B = self.algebra
        if isinstance(other, EnvelopeElement):
            self._check(other)
            out = {}
            for (m1, m2), c in self.coeffs.items():
                d1 = B.mono_degree(m1)
                d2 = B.mono_degree(m2)
                for (n1, n2), c2 in other.coeffs.items():
                    twist = -1 if (B.mono_degree(n1) * (d1 + d2)) % 2 else 1
                    left = B.mono_mul(n1, m1)
                    if left is None:
                        continue
                    s_l, ml = left
                    right = B.mono_mul(m2, n2)
                    if right is None:
                        continue
                    s_r, mr = right
                    add = (c * c2).scale(s_l * s_r * B.field.of(twist))
                    if add:
                        _merge(out, (ml, mr), add)
            return EnvelopeElement(B, out)
        if isinstance(other, AlgebraElement):
            return self * rho(other)  # right action: b1^o(x)b2 . b = b1^o(x)b2 b
        if isinstance(other, (RingElement, int, Fraction, ModP)):
            if isinstance(other, int):
                other = B.ring.scalar(other)
            return EnvelopeElement(B, {k: c * other for k, c in self.coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        # left action b . (b1^o (x) b2) = (b b1)^o (x) b2
        B = self.algebra
        if isinstance(other, AlgebraElement):
            out = {}
            for (m1, m2), c in self.coeffs.items():
                for m, cb in other.coeffs.items():
                    hit = B.mono_mul(m, m1)
                    if hit is None:
                        continue
                    scalar, mono = hit
                    add = (cb * c).scale(scalar)
                    if add:
                        _merge(out, (mono, m2), add)
            return EnvelopeElement(B, out)
        if isinstance(other, (RingElement, int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def diff(self):
        B = self.algebra
        out = {}
        for (m1, m2), c in self.coeffs.items():
            for mu, cu in B.mono_diff(m1).coeffs.items():
                _merge(out, (mu, m2), cu * c)
            sign = -1 if B.mono_degree(m1) % 2 else 1
            for nu, cv in B.mono_diff(m2).coeffs.items():
                add = (cv * c).scale(B.field.of(sign))
                if add:
                    _merge(out, (m1, nu), add)
        return EnvelopeElement(B, out)

    def is_homogeneous(self):
        degrees = set()
        for (m1, m2), c in self.coeffs.items():
            if not c.is_homogeneous():
                return False
            degrees.add((self.algebra.mono_degree(m1) + self.algebra.mono_degree(m2),
                         self.algebra.mono_weight(m1) + self.algebra.mono_weight(m2)
                         + c.weight()))
        return len(degrees) <= 1

    def bidegree(self):
        degrees = set()
        for (m1, m2), c in self.coeffs.items():
            for w in c.weight_components():
                degrees.add((self.algebra.mono_degree(m1) + self.algebra.mono_degree(m2),
                             self.algebra.mono_weight(m1)
                             + self.algebra.mono_weight(m2) + w))
        if not degrees:
            return (0, 0)
        if len(degrees) > 1:
            raise ConstructionError("element is not bihomogeneous")
        return degrees.pop()

    def __repr__(self):
        return render_pair_terms(self.algebra, self.coeffs)


class DiagonalElement:
    """An element of the diagonal ideal J in sigma coordinates.

    ``coeffs`` maps pairs (m1, m2) with m1 != 1 to ring coefficients; the
    element is sum coeffs[(m1,m2)] . (m1^o (x) m2 - 1^o (x) m1 m2).
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        clean = {}
        for (m1, m2), c in coeffs.items():
            if c:
                if m1 == algebra.unit_mono:
                    raise ConstructionError("sigma coordinates require m1 != 1")
                clean[(m1, m2)] = c
        self.coeffs = clean

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ConstructionError("diagonal elements over different algebras")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DiagonalElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _merge(out, k, c)
        return DiagonalElement(self.algebra, out)

    def __neg__(self):
        return DiagonalElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def to_envelope(self):
        B = self.algebra
        out = {}
        for (m1, m2), c in self.coeffs.items():
            _merge(out, (m1, m2), c)
            hit = B.mono_mul(m1, m2)
            if hit is not None:
                scalar, mono = hit
                add = c.scale(-scalar)
                if add:
                    _merge(out, (B.unit_mono, mono), add)
        return EnvelopeElement(B, out)

    def diff(self):
        # sigma commutes with the differentials, so differentiate the raw
        # pair and drop the components with m1 = 1 that sigma kills
        B = self.algebra
        out = {}
        unit = B.unit_mono
        for (m1, m2), c in self.coeffs.items():
            for mu, cu in B.mono_diff(m1).coeffs.items():
                if mu != unit:
                    _merge(out, (mu, m2), cu * c)
            sign = -1 if B.mono_degree(m1) % 2 else 1
            for nu, cv in B.mono_diff(m2).coeffs.items():
                add = (cv * c).scale(B.field.of(sign))
                if add:
                    _merge(out, (m1, nu), add)
        return DiagonalElement(B, out)

    def __mul__(self, other):
        B = self.algebra
        if isinstance(other, AlgebraElement):
            # right action keeps sigma coordinates: second slot multiplies
            out = {}
            for (m1, m2), c in self.coeffs.items():
                for m, cb in other.coeffs.items():
                    hit = B.mono_mul(m2, m)
                    if hit is None:
                        continue
                    scalar, mono = hit
                    add = (c * cb).scale(scalar)
                    if add:
                        _merge(out, (m1, mono), add)
            return DiagonalElement(B, out)
        if isinstance(other, EnvelopeElement):
            # J is a right ideal; the product stays in J
            return sigma(self.to_envelope() * other)
        if isinstance(other, (RingElement, int, Fraction, ModP)):
            if isinstance(other, int):
                other = B.ring.scalar(other)
            return DiagonalElement(B, {k: c * other for k, c in self.coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        B = self.algebra
        if isinstance(other, AlgebraElement):
            # b . sigma(m1^o(x)m2) = sigma((b m1)^o(x)m2) - sigma(b^o(x)m1 m2)
            out = {}
            unit = B.unit_mono
            for (m1, m2), c in self.coeffs.items():
                for m, cb in other.coeffs.items():
                    hit = B.mono_mul(m, m1)
                    if hit is not None:
                        scalar, mono = hit
                        add = (cb * c).scale(scalar)
                        if add:
                            _merge(out, (mono, m2), add)
                    if m != unit:
                        hit2 = B.mono_mul(m1, m2)
                        if hit2 is not None:
                            scalar2, mono2 = hit2
                            add2 = (cb * c).scale(-scalar2)
                            if add2:
                                _merge(out, (m, mono2), add2)
            return DiagonalElement(B, out)
        if isinstance(other, (RingElement, int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def is_homogeneous(self):
        return self.to_envelope().is_homogeneous()

    def bidegree(self):
        return self.to_envelope().bidegree()

    def __repr__(self):
        return repr(self.to_envelope())


# -- the canonical splitting ----------------------------------------------------


def pi(u: EnvelopeElement) -> AlgebraElement:
    """Multiplication map B^e -> B."""
    B = u.algebra
    total = B.zero()
    for (m1, m2), c in u.coeffs.items():
        hit = B.mono_mul(m1, m2)
        if hit is None:
            continue
        scalar, mono = hit
        total = total + AlgebraElement(B, {mono: c.scale(scalar)})
    return total


def rho(b: AlgebraElement) -> EnvelopeElement:
    """Algebra section b -> 1^o (x) b."""
    B = b.algebra
    return EnvelopeElement(B, {(B.unit_mono, m): c for m, c in b.coeffs.items()})


def op_inclusion(b: AlgebraElement) -> EnvelopeElement:
    """The opposite-side inclusion b -> b^o (x) 1."""
    B = b.algebra
    return EnvelopeElement(B, {(m, B.unit_mono): c for m, c in b.coeffs.items()})


def sigma(u: EnvelopeElement) -> DiagonalElement:
    """Retraction B^e -> J, u -> u - rho(pi(u)).

    In pair coordinates this keeps exactly the coefficients at m1 != 1.
    """
    B = u.algebra
    return DiagonalElement(B, {k: c for k, c in u.coeffs.items()
                               if k[0] != B.unit_mono})


def delta(b: AlgebraElement) -> DiagonalElement:
    """Universal derivation b -> b^o (x) 1 - 1^o (x) b, in sigma coordinates."""
    B = b.algebra
    return DiagonalElement(B, {(m, B.unit_mono): c for m, c in b.coeffs.items()
                               if m != B.unit_mono})


# -- graded bases of B^e and J ----------------------------------------------------


def envelope_basis(B, n, w):
    """Ground-field basis of (B^e)_(n, w): (m1, m2, ring monomial) triples."""
    out = []
    for d1 in range(n + 1):
        for m1 in B.monomial_basis(d1):
            w1 = B.mono_weight(m1)
            for m2 in B.monomial_basis(n - d1):
                rest = w - w1 - B.mono_weight(m2)
                for rm in B.ring.graded_basis(rest):
                    out.append((m1, m2, rm))
    out.sort(key=lambda t: (B.mono_key(t[0]), B.mono_key(t[1]), ring_mono_key(t[2])))
    return out


def diagonal_basis(B, n, w):
    """Basis of J_(n, w): DiagonalElements sigma(m1^o (x) m2) . r, m1 != 1."""
    out = []
    for (m1, m2, rm) in envelope_basis(B, n, w):
        if m1 == B.unit_mono:
            continue
        out.append(DiagonalElement(
            B, {(m1, m2): RingElement(B.ring, {rm: B.field.one})}))
    return out


def diagonal_block_keys(B, n, w):
    """(m1, m2, ring monomial) index keys matching diagonal_basis order."""
    return [(m1, m2, rm) for (m1, m2, rm) in envelope_basis(B, n, w)
            if m1 != B.unit_mono]


def diagonal_vec(element, keys, pos=None):
    field = element.algebra.field
    if pos is None:
        pos = {k: i for i, k in enumerate(keys)}
    vec = [field.zero] * len(keys)
    for (m1, m2), c in element.coeffs.items():
        for rm, s in c.coeffs.items():
            try:
                vec[pos[(m1, m2, rm)]] = s
            except KeyError:
                raise ConstructionError("element does not lie in the chosen bidegree block")
    return vec


def diagonal_label(B, key):
    m1, m2, rm = key
    left = B.render_mono(m1)
    if "*" in left or "^" in left:
        left = "(%s)" % left
    txt = "σ(%s^o⊗%s)" % (left, B.render_mono(m2))
    r_txt = B.ring.render_mono(rm)
    return txt if r_txt == "1" else txt + "·" + r_txt


def diagonal_diff_block(B, n, w) -> linalg.BlockMatrix:
    """The differential of J as a matrix from the (n, w) block to (n-1, w)."""
    src = diagonal_basis(B, n, w)
    src_keys = diagonal_block_keys(B, n, w)
    dst_keys = diagonal_block_keys(B, n - 1, w)
    pos = {k: i for i, k in enumerate(dst_keys)}
    rows = [[B.field.zero] * len(src) for _ in dst_keys]
    for j, el in enumerate(src):
        image = el.diff()
        vec = diagonal_vec(image, dst_keys, pos)
        for i, s in enumerate(vec):
            if s:
                rows[i][j] = s
    return linalg.BlockMatrix(rows,
                              [diagonal_label(B, k) for k in src_keys],
                              [diagonal_label(B, k) for k in dst_keys],
                              B.field)


def diagonal_homology_dim(B, n, w) -> int:
    """dim H_(n, w) of the diagonal ideal J."""
    return linalg.homology_dim(diagonal_diff_block(B, n + 1, w),
                               diagonal_diff_block(B, n, w))
