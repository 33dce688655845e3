"""Strictly commutative free DG extensions B = R<X_1,...,X_n>.

Each adjoined variable X carries a homological degree |X| >= 1, an internal
degree w(X) >= 1, and a differential image dX which must be a cycle built
from variables declared before X.  Variables of odd homological degree are
exterior (X^2 = 0); variables of even degree come with the full divided
power family Y^(n), multiplying by

    Y^(m) * Y^(n) = binomial(m+n, n) * Y^(m+n)

and differentiating by d(Y^(n)) = Y^(n-1) * dY.  These are the rules that
make the extension well behaved over every coefficient field, including
positive characteristic where Y^(n) is not n-th-power-over-factorial.

A monomial is an exponent tuple aligned with the variable list (odd
exponents capped at 1).  Products of monomials pick up the Koszul sign
counting inversions among odd letters; the differential expands by the
Leibniz rule over the factors.  Elements are monomial -> RingElement maps.
"""

from fractions import Fraction
from math import comb

from . import linalg
from .coefficients import ModP, RingElement
from .errors import (ConstructionError, CycleViolation, ForwardReference,
                     GradingViolation)


class Variable:
    """A declared generator: name, homological degree, internal degree.

    The differential image is held by the algebra, not the variable, since
    it is an element of the algebra being built.
    """

    __slots__ = ("name", "degree", "weight")

    def __init__(self, name, degree, weight):
        if not isinstance(degree, int) or degree < 1:
            raise GradingViolation("variable %s needs homological degree >= 1" % name)
        if not isinstance(weight, int) or weight < 1:
            raise GradingViolation("variable %s needs internal degree >= 1" % name)
        self.name = name
        self.degree = degree
        self.weight = weight

    @property
    def is_odd(self):
        return self.degree % 2 == 1

    def __repr__(self):
        return "%s:(%d,%d)" % (self.name, self.degree, self.weight)


class FreeDGAlgebra:
    """R<X_1,...,X_n> with prescribed differentials on the generators.

    ``diff_data`` maps variable names to elements given as raw coefficient
    dictionaries {monomial exponents: RingElement} (or None for zero).
    Construction validates, for every variable, that dX only involves
    earlier variables, that dX is homogeneous of bidegree
    (|X| - 1, w(X)), and that d(dX) = 0.
    """

    def __init__(self, ring, variables, diff_data=None):
        self.ring = ring
        self.vars = tuple(variables)
        names = [v.name for v in self.vars]
        if len(names) != len(set(names)):
            raise ConstructionError("duplicate variable name")
        clash = set(names) & set(ring.gens)
        if clash:
            raise ConstructionError("variable name %s clashes with a ring generator"
                                    % sorted(clash)[0])
        self._index = {v.name: i for i, v in enumerate(self.vars)}
        diff_data = diff_data or {}
        diffs = []
        for i, v in enumerate(self.vars):
            raw = diff_data.get(v.name)
            el = AlgebraElement(self, raw or {})
            for mono in el.coeffs:
                if any(mono[j] for j in range(i, len(self.vars))):
                    raise ForwardReference(
                        "d%s uses a variable not declared before %s" % (v.name, v.name))
            if el.coeffs:
                n, w = el.bidegree()
                if n != v.degree - 1:
                    raise GradingViolation(
                        "d%s has homological degree %d, expected %d"
                        % (v.name, n, v.degree - 1))
                if w != v.weight:
                    raise GradingViolation(
                        "d%s has internal degree %d, expected %d" % (v.name, w, v.weight))
            diffs.append(el)
        self.diffs = tuple(diffs)
        self._mono_diff_cache = {}
        self._basis_cache = {}
        self._bibasis_cache = {}
        for v, d in zip(self.vars, self.diffs):
            dd = d.diff()
            if dd:
                raise CycleViolation("d(d%s) = %s is nonzero" % (v.name, dd))

    @property
    def field(self):
        return self.ring.field

    def __eq__(self, other):
        return (isinstance(other, FreeDGAlgebra)
                and self.ring == other.ring
                and [(v.name, v.degree, v.weight) for v in self.vars]
                == [(v.name, v.degree, v.weight) for v in other.vars]
                and [d.coeffs for d in self.diffs] == [d.coeffs for d in other.diffs])

    def __repr__(self):
        vars_txt = ", ".join("%s:%d" % (v.name, v.degree) for v in self.vars)
        diffs_txt = ", ".join("d%s = %s" % (v.name, d)
                              for v, d in zip(self.vars, self.diffs))
        return "%r<%s | %s>" % (self.ring, vars_txt, diffs_txt)

    # -- monomials ------------------------------------------------------------

    @property
    def unit_mono(self):
        return (0,) * len(self.vars)

    def mono_degree(self, mono):
        return sum(e * v.degree for e, v in zip(mono, self.vars))

    def mono_weight(self, mono):
        return sum(e * v.weight for e, v in zip(mono, self.vars))

    def mono_key(self, mono):
        return (self.mono_degree(mono), mono)

    def mono_mul(self, a, b):
        """(scalar, monomial) for the product, or None when it vanishes."""
        coeff = 1
        exps = []
        for i, v in enumerate(self.vars):
            e = a[i] + b[i]
            if v.is_odd:
                if e > 1:
                    return None
            elif a[i] and b[i]:
                coeff *= comb(e, a[i])
            exps.append(e)
        # Koszul sign: odd letters of b move left past later odd letters of a
        inv = 0
        for j, v in enumerate(self.vars):
            if v.is_odd and b[j]:
                inv += sum(a[i] for i in range(j + 1, len(self.vars))
                           if self.vars[i].is_odd)
        scalar = self.field.of(-coeff if inv % 2 else coeff)
        if not scalar:
            return None
        return scalar, tuple(exps)

    def render_mono(self, mono):
        parts = []
        for v, e in zip(self.vars, mono):
            if e == 0:
                continue
            if v.is_odd or e == 1:
                parts.append(v.name)
            else:
                parts.append("%s^(%d)" % (v.name, e))
        return "*".join(parts) if parts else "1"

    def mono_diff(self, mono):
        """d of a single monomial, by the Leibniz rule over its factors."""
        try:
            return self._mono_diff_cache[mono]
        except KeyError:
            pass
        total = self.zero()
        prefix_parity = 0
        for i, v in enumerate(self.vars):
            e = mono[i]
            if e:
                head = [0] * len(self.vars)
                for k in range(i):
                    head[k] = mono[k]
                if not v.is_odd:
                    head[i] = e - 1  # even factor: d(Y^(e)) = Y^(e-1) dY
                tail = [0] * len(self.vars)
                for k in range(i + 1, len(self.vars)):
                    tail[k] = mono[k]
                term = (self.mono_element(tuple(head))
                        * self.diffs[i]
                        * self.mono_element(tuple(tail)))
                if prefix_parity:
                    term = -term
                total = total + term
                prefix_parity = (prefix_parity + e * v.degree) % 2
        self._mono_diff_cache[mono] = total
        return total

    # -- element constructors --------------------------------------------------

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {self.unit_mono: self.ring.one()})

    def mono_element(self, mono, coeff=None):
        return AlgebraElement(self, {mono: coeff if coeff is not None else self.ring.one()})

    def gen(self, name):
        i = self._index[name]
        mono = tuple(1 if j == i else 0 for j in range(len(self.vars)))
        return self.mono_element(mono)

    def divided_power(self, name, n):
        i = self._index[name]
        if self.vars[i].is_odd:
            raise ConstructionError("divided powers only exist for even variables")
        mono = tuple(n if j == i else 0 for j in range(len(self.vars)))
        return self.mono_element(mono)

    def from_ring(self, r):
        if r.ring != self.ring:
            raise ConstructionError("coefficient from a different base ring")
        return AlgebraElement(self, {self.unit_mono: r}) if r else self.zero()

    # -- graded bases -----------------------------------------------------------

    def monomial_basis(self, n):
        """Monomials of homological degree n, in the fixed order."""
        if n < 0:
            return []
        try:
            return self._basis_cache[n]
        except KeyError:
            pass
        found = []

        def extend(prefix, i, remaining):
            if i == len(self.vars):
                if remaining == 0:
                    found.append(tuple(prefix))
                return
            v = self.vars[i]
            top = remaining // v.degree
            if v.is_odd:
                top = min(1, top)
            for e in range(top + 1):
                extend(prefix + [e], i + 1, remaining - e * v.degree)

        extend([], 0, n)
        found.sort(key=self.mono_key)
        self._basis_cache[n] = found
        return found

    def bidegree_basis(self, n, w):
        """Ground-field basis of the (n, w) piece: (monomial, ring monomial)."""
        key = (n, w)
        try:
            return self._bibasis_cache[key]
        except KeyError:
            pass
        out = []
        for mono in self.monomial_basis(n):
            rest = w - self.mono_weight(mono)
            for rm in self.ring.graded_basis(rest):
                out.append((mono, rm))
        self._bibasis_cache[key] = out
        return out

    def diff_block(self, n, w):
        """The differential as a matrix from the (n, w) piece to (n-1, w)."""
        src = self.bidegree_basis(n, w)
        dst = self.bidegree_basis(n - 1, w)
        pos = {k: i for i, k in enumerate(dst)}
        rows = [[self.field.zero] * len(src) for _ in dst]
        for j, (mono, rm) in enumerate(src):
            image = self.mono_diff(mono) * RingElement(self.ring, {rm: self.field.one})
            for m2, coeff in image.coeffs.items():
                for e2, c in coeff.coeffs.items():
                    rows[pos[(m2, e2)]][j] = c
        labels_src = [self.render_mono(m) + "." + self.ring.render_mono(r)
                      for m, r in src]
        labels_dst = [self.render_mono(m) + "." + self.ring.render_mono(r)
                      for m, r in dst]
        return linalg.BlockMatrix(rows, labels_src, labels_dst, self.field)


class AlgebraElement:
    """Finite sum of monomials with normal-form ring coefficients."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        clean = {}
        for mono, c in coeffs.items():
            if c:
                clean[mono] = c
        self.coeffs = clean

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ConstructionError("elements of different algebras")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        B = self.algebra
        if isinstance(other, AlgebraElement):
            self._check(other)
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    hit = B.mono_mul(m1, m2)
                    if hit is None:
                        continue
                    scalar, mono = hit
                    add = (c1 * c2).scale(scalar)
                    s = out.get(mono)
                    s = add if s is None else s + add
                    if s:
                        out[mono] = s
                    else:
                        out.pop(mono, None)
            return AlgebraElement(B, out)
        if isinstance(other, RingElement):
            return AlgebraElement(B, {m: c * other for m, c in self.coeffs.items()})
        if isinstance(other, int):
            other = B.field.of(other)
        if isinstance(other, (Fraction, ModP)):
            return AlgebraElement(B, {m: c * other for m, c in self.coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        # ring scalars and integers are central (degree 0)
        if isinstance(other, (RingElement, int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def diff(self):
        total = self.algebra.zero()
        for mono, c in self.coeffs.items():
            total = total + self.algebra.mono_diff(mono) * c
        return total

    def is_homogeneous(self):
        degrees = set()
        for mono, c in self.coeffs.items():
            if not c.is_homogeneous():
                return False
            degrees.add((self.algebra.mono_degree(mono),
                         self.algebra.mono_weight(mono) + c.weight()))
        return len(degrees) <= 1

    def bidegree(self):
        """(homological, internal) bidegree of a homogeneous element."""
        degrees = set()
        for mono, c in self.coeffs.items():
            for w, _ in c.weight_components().items():
                degrees.add((self.algebra.mono_degree(mono),
                             self.algebra.mono_weight(mono) + w))
        if not degrees:
            return (0, 0)
        if len(degrees) > 1:
            raise ConstructionError("element is not bihomogeneous")
        return degrees.pop()

    def degree(self):
        return self.bidegree()[0]

    def sorted_terms(self):
        """(monomial, ring monomial, scalar) triples in the fixed order."""
        out = []
        for mono, c in sorted(self.coeffs.items(),
                              key=lambda kv: self.algebra.mono_key(kv[0])):
            for rm, s in c.sorted_terms():
                out.append((mono, rm, s))
        return out

    def __repr__(self):
        from .coefficients import join_signed, render_scalar_mono
        if not self.coeffs:
            return "0"
        parts = []
        for mono, rm, s in self.sorted_terms():
            m_txt = self.algebra.render_mono(mono)
            r_txt = self.algebra.ring.render_mono(rm)
            if m_txt == "1":
                combined = r_txt
            elif r_txt == "1":
                combined = m_txt
            else:
                combined = m_txt + "*" + r_txt
            parts.append(render_scalar_mono(s, combined))
        return join_signed(parts)
