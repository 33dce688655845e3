"""The line-oriented problem description language.

A problem file declares one ring, one algebra, and any number of modules:

    # the liftable example
    ring R = QQ[x:1,y:1]/(x*y)
    algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
    module N over B = <e:0, ep:4 | de = 0, dep = e*X*Y*y>

Expressions are sums of signed products of atoms; an atom is an integer
scalar, a rational scalar p/q, a declared name, a plain power `x^2`, or a
divided power `Y^(n)` (even algebra variables only).  Plain powers of an
even variable reduce to divided powers with the binomial scalar, odd
squares vanish.  Whitespace is insignificant and `#` starts a comment.

Internal degrees are inferred: a variable takes the internal degree of its
differential image (its homological degree when dX = 0), a module basis
element takes the degree forced by its differential (0 when absent).  A
third field overrides the default (`X:1:2`, `e:0:3`) and is checked for
consistency when the differential already forces a value.

Every construction error raised by the algebra layers is re-raised with
the source line of the declaration that caused it.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coefficients import BaseRing, PrimeField, QQ
from .errors import ConstructionError, ParseError, UndeclaredName
from .free_dga import AlgebraElement, FreeDGAlgebra, Variable
from .semifree import ModuleElement, SemifreeModule

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>\d+)"
    r"|(?P<sym><|>|\||,|:|/|\(|\)|\*|\+|-|\^|=|\[|\]))")


def _tokenize(text, line_no):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError("unexpected character %r" % text[pos:].strip()[0],
                                 line_no)
            break
        pos = m.end()
        if m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int"))))
        else:
            tokens.append(("sym", m.group("sym")))
    return tokens


class _Tokens:
    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.line = line_no
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at_sym(self, *symbols):
        kind, value = self.peek()
        return kind == "sym" and value in symbols

    def eat_sym(self, symbol):
        if self.at_sym(symbol):
            self.pos += 1
            return True
        return False

    def expect_sym(self, symbol):
        kind, value = self.next()
        if kind != "sym" or value != symbol:
            raise ParseError("expected %r, found %r" % (symbol, value), self.line)

    def expect_name(self):
        kind, value = self.next()
        if kind != "name":
            raise ParseError("expected a name, found %r" % (value,), self.line)
        return value

    def expect_int(self):
        sign = 1
        if self.at_sym("-"):
            self.next()
            sign = -1
        kind, value = self.next()
        if kind != "int":
            raise ParseError("expected an integer, found %r" % (value,), self.line)
        return sign * value

    def done(self):
        return self.pos >= len(self.tokens)

    def expect_done(self):
        if not self.done():
            raise ParseError("trailing input %r" % (self.peek()[1],), self.line)


@dataclass
class ProblemDescription:
    ring_name: str
    ring: BaseRing
    algebra_name: str
    algebra: FreeDGAlgebra
    modules: dict = field(default_factory=dict)  # name -> SemifreeModule

    def __eq__(self, other):
        return (isinstance(other, ProblemDescription)
                and self.ring_name == other.ring_name
                and self.ring == other.ring
                and self.algebra_name == other.algebra_name
                and self.algebra == other.algebra
                and self.modules == other.modules)


# -- expression evaluation --------------------------------------------------------


def _power(base_kind, base_value, exponent, divided, ts):
    B = None
    if base_kind == "var":
        B, name = base_value
        i = B._index[name]
        if divided:
            if B.vars[i].is_odd:
                raise ParseError("divided power of the odd variable %s" % name, ts.line)
            return ("alg", B.divided_power(name, exponent))
        out = B.one()
        for _ in range(exponent):
            out = out * B.gen(name)
        return ("alg", out)
    if base_kind == "ring":
        if divided:
            raise ParseError("divided powers only apply to even algebra variables",
                             ts.line)
        out = base_value
        acc = None
        for _ in range(exponent):
            acc = out if acc is None else acc * out
        if acc is None:
            raise ParseError("zero exponent is not part of the grammar", ts.line)
        return ("ring", acc)
    raise ParseError("cannot raise %r to a power" % (base_kind,), ts.line)


def _parse_factor(ts, env):
    kind, value = ts.peek()
    if kind == "int":
        ts.next()
        if ts.eat_sym("/"):
            den = ts.expect_int()
            if den == 0:
                raise ParseError("zero denominator", ts.line)
            return ("scalar", Fraction(value, den))
        return ("scalar", value)
    if kind != "name":
        raise ParseError("expected a factor, found %r" % (value,), ts.line)
    ts.next()
    if value not in env:
        raise UndeclaredName("undeclared name %r" % value, ts.line)
    base_kind, base_value = env[value]
    if ts.eat_sym("^"):
        if ts.eat_sym("("):
            n = ts.expect_int()
            ts.expect_sym(")")
            if n < 0:
                raise ParseError("negative divided power", ts.line)
            return _power(base_kind, base_value, n, True, ts)
        n = ts.expect_int()
        if n < 0:
            raise ParseError("negative exponent", ts.line)
        return _power(base_kind, base_value, n, False, ts)
    if base_kind == "var":
        B, name = base_value
        return ("alg", B.gen(name))
    return (base_kind, base_value)


def _parse_term(ts, env, algebra):
    negate = ts.eat_sym("-")
    label = None
    value = algebra.one()
    seen_monomial = False
    while True:
        kind, payload = _parse_factor(ts, env)
        if kind == "label":
            # scalars may precede the label, monomial factors may not
            if label is not None or seen_monomial:
                raise ParseError("basis label %r must lead its term (after "
                                 "scalars)" % payload, ts.line)
            label = payload
        elif kind == "scalar":
            value = value * payload if isinstance(payload, Fraction) \
                else value * algebra.field.of(payload)
        else:
            value = value * payload
            seen_monomial = True
        if not ts.eat_sym("*"):
            break
    if negate:
        value = -value
    return label, value


def _parse_expression(ts, env, algebra):
    """Sum of signed terms; returns {label or None: AlgebraElement}."""
    out = {}
    while True:
        label, value = _parse_term(ts, env, algebra)
        if value:
            prev = out.get(label)
            total = value if prev is None else prev + value
            if total:
                out[label] = total
            else:
                out.pop(label, None)
        if ts.eat_sym("+"):
            continue
        if ts.at_sym("-"):
            continue  # the leading minus of the next term
        break
    return out


def parse_algebra_element(problem, text):
    """Evaluate an expression (no module labels) in the problem's algebra."""
    B = problem.algebra
    env = {}
    for g in B.ring.gens:
        env[g] = ("ring", B.ring.gen(g))
    for v in B.vars:
        env[v.name] = ("var", (B, v.name))
    ts = _Tokens(_tokenize(text, 0), 0)
    if ts.done():
        raise ParseError("empty expression", 0)
    parts = _parse_expression(ts, env, B)
    ts.expect_done()
    total = B.zero()
    for label, value in parts.items():
        if label is not None:
            raise ParseError("module label %r in an algebra expression" % label, 0)
        total = total + value
    return total


# -- declarations ------------------------------------------------------------------


def _parse_ring_tokens(ts):
    field_name = ts.expect_name()
    if field_name == "QQ":
        ground = QQ
    elif field_name == "FF":
        ts.expect_sym("(")
        p = ts.expect_int()
        ts.expect_sym(")")
        try:
            ground = PrimeField(p)
        except ConstructionError as exc:
            raise ParseError(str(exc), ts.line)
    else:
        raise ParseError("unknown ground field %r (use QQ or FF(p))" % field_name,
                         ts.line)
    gens, degrees = [], []
    if ts.eat_sym("["):
        while True:
            gens.append(ts.expect_name())
            ts.expect_sym(":")
            degrees.append(ts.expect_int())
            if ts.eat_sym("]"):
                break
            ts.expect_sym(",")
    relations = []
    if ts.eat_sym("/"):
        ts.expect_sym("(")
        env = {}
        probe = BaseRing(ground, tuple(gens), tuple(degrees), [])
        for g in gens:
            env[g] = ("ring", probe.gen(g))
        scratch = FreeDGAlgebra(probe, [])
        while True:
            parts = _parse_expression(ts, env, scratch)
            mono = _as_relation_monomial(parts, probe, ts)
            relations.append(mono)
            if ts.eat_sym(")"):
                break
            ts.expect_sym(",")
    try:
        return BaseRing(ground, tuple(gens), tuple(degrees), relations)
    except ConstructionError as exc:
        raise ParseError(str(exc), ts.line)


def _as_relation_monomial(parts, ring, ts):
    if set(parts) != {None} or len(parts) != 1:
        raise ParseError("a relation must be a single monomial", ts.line)
    el = parts[None]
    terms = [(m, r) for m, r in el.coeffs.items()]
    if len(terms) != 1 or terms[0][0] != el.algebra.unit_mono:
        raise ParseError("a relation must be a single monomial", ts.line)
    coeff = terms[0][1]
    monos = list(coeff.coeffs.items())
    if len(monos) != 1 or monos[0][1] != ring.field.one:
        raise ParseError("a relation must be a monomial with coefficient 1", ts.line)
    return monos[0][0]


def parse_ring(text):
    """The ring sub-grammar: `QQ`, `FF(p)`, `QQ[x:1,y:1]/(x*y, ...)`."""
    ts = _Tokens(_tokenize(text.strip(), 0), 0)
    ring = _parse_ring_tokens(ts)
    ts.expect_done()
    return ring


def _parse_algebra_decl(ts, rings):
    name = ts.expect_name()
    ts.expect_sym("=")
    ring_name = ts.expect_name()
    if ring_name not in rings:
        raise UndeclaredName("undeclared ring %r" % ring_name, ts.line)
    ring = rings[ring_name]
    ts.expect_sym("<")
    specs = []  # (name, degree, explicit weight or None)
    if not ts.at_sym("|", ">"):
        while True:
            vname = ts.expect_name()
            ts.expect_sym(":")
            degree = ts.expect_int()
            weight = None
            if ts.eat_sym(":"):
                weight = ts.expect_int()
            specs.append((vname, degree, weight))
            if not ts.eat_sym(","):
                break
    diff_exprs = {}
    if ts.eat_sym("|"):
        declared = {s[0] for s in specs}
        while True:
            dname = ts.expect_name()
            if not dname.startswith("d") or dname[1:] not in declared:
                raise ParseError("expected d<variable>, found %r" % dname, ts.line)
            ts.expect_sym("=")
            start = ts.pos
            depth = 0
            while not ts.done():
                kind, value = ts.peek()
                if kind == "sym" and value == "(":
                    depth += 1
                if kind == "sym" and value == ")":
                    depth -= 1
                if kind == "sym" and value in (",", ">") and depth == 0:
                    break
                ts.next()
            diff_exprs[dname[1:]] = (start, ts.pos)
            if not ts.eat_sym(","):
                break
    ts.expect_sym(">")

    for vname, degree, weight in specs:
        if degree < 1:
            raise ParseError("variable %s needs homological degree >= 1" % vname,
                             ts.line)
    # pass 1: provisional algebra (weights irrelevant for products)
    try:
        provisional = FreeDGAlgebra(
            ring, [Variable(v, d, w if w is not None else max(d, 1))
                   for v, d, w in specs])
    except ConstructionError as exc:
        raise ParseError(str(exc), ts.line)
    env = {g: ("ring", ring.gen(g)) for g in ring.gens}
    for v in provisional.vars:
        env[v.name] = ("var", (provisional, v.name))
    diff_data = {}
    for vname, (start, end) in diff_exprs.items():
        sub = _Tokens(ts.tokens[start:end], ts.line)
        if sub.done():
            raise ParseError("empty differential for %s" % vname, ts.line)
        parts = _parse_expression(sub, env, provisional)
        sub.expect_done()
        el = provisional.zero()
        for label, value in parts.items():
            if label is not None:
                raise ParseError("module label in d%s" % vname, ts.line)
            el = el + value
        if el:
            diff_data[vname] = el.coeffs
    # pass 2: infer internal degrees and build the validated algebra
    variables = []
    for vname, degree, weight in specs:
        raw = diff_data.get(vname)
        if raw:
            el = AlgebraElement(provisional, raw)
            try:
                _, w_forced = el.bidegree()
            except ConstructionError:
                raise ParseError("d%s is not internally homogeneous" % vname, ts.line)
            if weight is not None and weight != w_forced:
                raise ParseError(
                    "declared internal degree %d for %s, but d%s forces %d"
                    % (weight, vname, vname, w_forced), ts.line)
            weight = w_forced
        elif weight is None:
            weight = degree
        variables.append((vname, degree, weight))
    try:
        algebra = FreeDGAlgebra(ring,
                                [Variable(v, d, w) for v, d, w in variables],
                                diff_data)
    except ConstructionError as exc:
        exc.line = ts.line
        raise
    return name, algebra


def _parse_module_decl(ts, algebras):
    name = ts.expect_name()
    kw = ts.expect_name()
    if kw != "over":
        raise ParseError("expected 'over', found %r" % kw, ts.line)
    algebra_name = ts.expect_name()
    if algebra_name not in algebras:
        raise UndeclaredName("undeclared algebra %r" % algebra_name, ts.line)
    B = algebras[algebra_name]
    ts.expect_sym("=")
    ts.expect_sym("<")
    specs = []  # (label, degree, explicit weight or None)
    while True:
        label = ts.expect_name()
        ts.expect_sym(":")
        degree = ts.expect_int()
        weight = None
        if ts.eat_sym(":"):
            weight = ts.expect_int()
        specs.append((label, degree, weight))
        if not ts.eat_sym(","):
            break
    labels = [s[0] for s in specs]
    diffs = {}
    if ts.eat_sym("|"):
        env = {g: ("ring", B.ring.gen(g)) for g in B.ring.gens}
        for v in B.vars:
            env[v.name] = ("var", (B, v.name))
        for lab in labels:
            env[lab] = ("label", lab)
        while True:
            dname = ts.expect_name()
            if not dname.startswith("d") or dname[1:] not in set(labels):
                raise ParseError("expected d<basis label>, found %r" % dname, ts.line)
            ts.expect_sym("=")
            parts = _parse_expression(ts, env, B)
            entries = {}
            for target, value in parts.items():
                if target is None:
                    if value:
                        raise ParseError(
                            "d%s has a component without a basis label" % dname[1:],
                            ts.line)
                    continue
                entries[target] = value
            diffs[dname[1:]] = entries
            if not ts.eat_sym(","):
                break
    ts.expect_sym(">")

    degrees = [s[1] for s in specs]
    weights = _infer_module_weights(specs, diffs, ts)
    structure = {}
    for lam, entries in diffs.items():
        for mu, value in entries.items():
            if value:
                structure[(mu, lam)] = value
    try:
        module = SemifreeModule(B, labels, degrees, weights, structure)
    except ConstructionError as exc:
        exc.line = ts.line
        raise
    return name, module


def _infer_module_weights(specs, diffs, ts):
    labels = [s[0] for s in specs]
    index = {lab: i for i, lab in enumerate(labels)}
    weights = [None] * len(labels)
    for i, (lab, _, explicit) in enumerate(specs):
        forced = None
        for mu, value in diffs.get(lab, {}).items():
            if not value:
                continue
            try:
                _, w_val = value.bidegree()
            except ConstructionError:
                raise ParseError(
                    "the %s-component of d%s is not internally homogeneous"
                    % (mu, lab), ts.line)
            mu_w = weights[index[mu]]
            if mu_w is None:
                raise ParseError(
                    "d%s refers to %s, which is not declared earlier" % (lab, mu),
                    ts.line)
            candidate = mu_w + w_val
            if forced is not None and candidate != forced:
                raise ParseError(
                    "components of d%s force inconsistent internal degrees" % lab,
                    ts.line)
            forced = candidate
        if forced is not None:
            if explicit is not None and explicit != forced:
                raise ParseError(
                    "declared internal degree %d for %s, but d%s forces %d"
                    % (explicit, lab, lab, forced), ts.line)
            weights[i] = forced
        else:
            weights[i] = explicit if explicit is not None else 0
    return weights


def default_module_weights(module):
    """The weights inference would produce with no annotations."""
    weights = [None] * module.rank
    for i in range(module.rank):
        forced = None
        for (mu, lam), entry in module.structure.items():
            if lam == i:
                forced = weights[mu] + entry.bidegree()[1]
        weights[i] = forced if forced is not None else 0
    return weights


def parse_problem(text):
    rings, algebras = {}, {}
    problem_ring = None
    problem_algebra = None
    modules = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ts = _Tokens(_tokenize(line, line_no), line_no)
        head = ts.expect_name()
        if head == "ring":
            if problem_ring is not None:
                raise ParseError("a problem declares exactly one ring", line_no)
            rname = ts.expect_name()
            ts.expect_sym("=")
            ring = _parse_ring_tokens(ts)
            ts.expect_done()
            rings[rname] = ring
            problem_ring = (rname, ring)
        elif head == "algebra":
            if problem_algebra is not None:
                raise ParseError("a problem declares exactly one algebra", line_no)
            if problem_ring is None:
                raise ParseError("declare the ring before the algebra", line_no)
            aname, algebra = _parse_algebra_decl(ts, rings)
            ts.expect_done()
            if aname in rings:
                raise ParseError("name %r is already in use" % aname, line_no)
            algebras[aname] = algebra
            problem_algebra = (aname, algebra)
        elif head == "module":
            if problem_algebra is None:
                raise ParseError("declare the algebra before any module", line_no)
            mname, module = _parse_module_decl(ts, algebras)
            ts.expect_done()
            if mname in rings or mname in algebras or mname in modules:
                raise ParseError("name %r is already in use" % mname, line_no)
            modules[mname] = module
        else:
            raise ParseError("unknown declaration %r" % head, line_no)
    if problem_ring is None or problem_algebra is None:
        raise ParseError("a problem needs a ring and an algebra", None)
    return ProblemDescription(problem_ring[0], problem_ring[1],
                              problem_algebra[0], problem_algebra[1], modules)


# -- pretty printer ----------------------------------------------------------------


def _ring_text(ring):
    if ring.is_field:
        return ring.field.name
    gens = ",".join("%s:%d" % (g, d) for g, d in zip(ring.gens, ring.degrees))
    txt = "%s[%s]" % (ring.field.name, gens)
    if ring.relations:
        txt += "/(%s)" % ", ".join(ring.render_mono(r) for r in ring.relations)
    return txt


def _algebra_text(name, ring_name, B):
    vars_txt = []
    for v, d in zip(B.vars, B.diffs):
        if d or v.weight == v.degree:
            vars_txt.append("%s:%d" % (v.name, v.degree))
        else:
            vars_txt.append("%s:%d:%d" % (v.name, v.degree, v.weight))
    diffs_txt = ["d%s = %s" % (v.name, d) for v, d in zip(B.vars, B.diffs)]
    inner = ", ".join(vars_txt)
    if diffs_txt:
        inner += " | " + ", ".join(diffs_txt)
    return "algebra %s = %s<%s>" % (name, ring_name, inner)


def _module_text(name, algebra_name, module):
    defaults = default_module_weights(module)
    basis_txt = []
    for i, lab in enumerate(module.labels):
        if module.weights[i] == defaults[i]:
            basis_txt.append("%s:%d" % (lab, module.degrees[i]))
        else:
            basis_txt.append("%s:%d:%d" % (lab, module.degrees[i],
                                           module.weights[i]))
    diff_txt = []
    for j, lam in enumerate(module.labels):
        value = module.zero()
        for (i, jj), entry in module.structure.items():
            if jj == j:
                value = value + ModuleElement(module, {module.labels[i]: entry})
        diff_txt.append("d%s = %s" % (lam, value))
    return "module %s over %s = <%s | %s>" % (
        name, algebra_name, ", ".join(basis_txt), ", ".join(diff_txt))


def print_problem(problem):
    lines = ["ring %s = %s" % (problem.ring_name, _ring_text(problem.ring)),
             _algebra_text(problem.algebra_name, problem.ring_name,
                           problem.algebra)]
    for mname, module in problem.modules.items():
        lines.append(_module_text(mname, problem.algebra_name, module))
    return "\n".join(lines) + "\n"
