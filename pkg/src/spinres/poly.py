"""Sparse exact multivariate polynomials over the Gaussian rationals.

Monomials are packed into a single Python int: a 16-bit total-degree header
followed by one 16-bit exponent field per variable (first declared variable
most significant).  Packed-int comparison is then exactly graded-lex with the
ring's declared variable order, and monomial multiplication is integer
addition.  Rings may carry several integer weight vectors (multi-gradings);
the packing header always uses the plain total degree, gradings only affect
``poly_degree`` and homogeneity checks.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import (GaussRat, cadd, cdiv, cfrom, cis_zero, cmul, cneg, cnorm,
                    csqrt, cstr, csub)

_W = 16
_MASK = (1 << _W) - 1

HETEROGENEOUS = "heterogeneous"


class RingMismatchError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a remainder."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class NotASquareError(ArithmeticError):
    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class PolyRing:
    """Polynomial ring Q(i)[vars] with one or more integer gradings."""

    def __init__(self, var_names, gradings=None):
        names = tuple(var_names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.var_names = names
        self.nvars = len(names)
        if gradings is None:
            gradings = ((1,) * self.nvars,)
        gradings = tuple(tuple(g) for g in gradings)
        for g in gradings:
            if len(g) != self.nvars:
                raise ValueError("grading length must equal variable count")
        self.gradings = gradings
        self._index = {name: k for k, name in enumerate(names)}
        n = self.nvars
        self._shifts = tuple(_W * (n - 1 - k) for k in range(n))
        self._deg_shift = _W * n
        high = 0
        for k in range(n + 1):
            high |= 1 << (_W * k + _W - 1)
        self._high = high
        self.zero = Poly(self, {})
        self.one = Poly(self, {0: 1})

    # -- monomial helpers (packed ints) --

    def pack(self, exps) -> int:
        m = 0
        total = 0
        for k, e in enumerate(exps):
            if e:
                if e < 0 or e >= (1 << (_W - 1)):
                    raise OverflowError("exponent out of packing range")
                total += e
                m |= e << self._shifts[k]
        return m | (total << self._deg_shift)

    def unpack(self, m: int):
        return tuple((m >> s) & _MASK for s in self._shifts)

    def mon_total_degree(self, m: int) -> int:
        return m >> self._deg_shift

    def mon_divides(self, m1: int, m2: int):
        """Quotient m2/m1 as a packed monomial, or None."""
        d = m2 - m1
        if d < 0:
            return None
        if ((m2 | self._high) - m1) & self._high != self._high:
            return None
        return d

    def mon_weighted_degree(self, m: int, grading_index: int) -> int:
        w = self.gradings[grading_index]
        exps = self.unpack(m)
        return sum(wk * ek for wk, ek in zip(w, exps))

    def mon_str(self, m: int) -> str:
        parts = []
        for name, s in zip(self.var_names, self._shifts):
            e = (m >> s) & _MASK
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    # -- element constructors --

    def var(self, name) -> "Poly":
        if isinstance(name, int):
            k = name
        else:
            k = self._index[name]
        return Poly(self, {self.pack(tuple(1 if j == k else 0 for j in range(self.nvars))): 1})

    def vars(self):
        return [self.var(k) for k in range(self.nvars)]

    def const(self, value) -> "Poly":
        c = cfrom(value)
        return Poly(self, {} if cis_zero(c) else {0: c})

    def from_exp_dict(self, d) -> "Poly":
        return Poly(self, {self.pack(e): cfrom(c) for e, c in d.items()})

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.var_names == other.var_names
                and self.gradings == other.gradings)

    def __hash__(self):
        return hash((self.var_names, self.gradings))

    def __repr__(self):
        return f"PolyRing({list(self.var_names)!r})"


class Monomial:
    """Public exponent-vector view of a packed monomial."""

    __slots__ = ("ring", "exponents")

    def __init__(self, ring: PolyRing, exponents):
        exponents = tuple(exponents)
        if len(exponents) != ring.nvars:
            raise ValueError("exponent vector length must equal variable count")
        if any(e < 0 for e in exponents):
            raise ValueError("exponents must be non-negative")
        self.ring = ring
        self.exponents = exponents

    def __eq__(self, other):
        return (isinstance(other, Monomial) and self.ring == other.ring
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Monomial({self.exponents!r})"


def _check_same_ring(a: "Poly", b: "Poly"):
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingMismatchError("polynomials belong to different rings")


class Poly:
    """Immutable sparse polynomial; no zero coefficients are stored."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if not cis_zero(c)}

    # -- inspection --

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self):
        """Mapping Monomial -> GaussRat (public, copy)."""
        ring = self.ring
        return {Monomial(ring, ring.unpack(m)): GaussRat(c) if isinstance(c, int) else c
                for m, c in self._terms.items()}

    def packed_items(self):
        return self._terms.items()

    def coeff(self, exps):
        c = self._terms.get(self.ring.pack(exps), 0)
        return GaussRat(c) if isinstance(c, int) else c

    def constant_term(self):
        return self._terms.get(0, 0)

    def leading(self):
        """(packed monomial, coefficient) maximal in graded lex."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms)
        return m, self._terms[m]

    def total_degree(self):
        if not self._terms:
            return None
        return max(self.ring.mon_total_degree(m) for m in self._terms)

    def variables(self):
        """Indices of variables that occur."""
        seen = set()
        ring = self.ring
        for m in self._terms:
            for k, s in enumerate(ring._shifts):
                if (m >> s) & _MASK:
                    seen.add(k)
        return seen

    # -- arithmetic --

    def __add__(self, other):
        if isinstance(other, (int, GaussRat, Fraction)):
            other = self.ring.const(other)
        _check_same_ring(self, other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = cadd(out[m], c)
                if cis_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        p = object.__new__(Poly)
        p.ring = self.ring
        p._terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = object.__new__(Poly)
        p.ring = self.ring
        p._terms = {m: cneg(c) for m, c in self._terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, GaussRat, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, GaussRat, Fraction)):
            c = cfrom(other)
            if cis_zero(c):
                return self.ring.zero
            p = object.__new__(Poly)
            p.ring = self.ring
            p._terms = {m: cmul(cc, c) for m, cc in self._terms.items()}
            return p
        _check_same_ring(self, other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return self.ring.zero
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                c = cmul(c1, c2)
                if m in out:
                    s = cadd(out[m], c)
                    if cis_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = c
        p = object.__new__(Poly)
        p.ring = self.ring
        p._terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, GaussRat, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if len(self._terms) != len(other._terms):
            return False
        for m, c in self._terms.items():
            oc = other._terms.get(m)
            if oc is None or not cis_zero(csub(c, oc)):
                return False
        return True

    __hash__ = None

    # -- text form --

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, reverse=True):
            c = self._terms[m]
            mon = self.ring.mon_str(m)
            cs = cstr(c)
            if mon:
                if cs == "1":
                    t = mon
                elif cs == "-1":
                    t = "-" + mon
                else:
                    t = f"{cs}*{mon}"
            else:
                t = cs
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            if t.startswith("-") and not t.startswith("-("):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return f"<Poly {self}>"


# -- spec-level operations --


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    _check_same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_exact_div(num: Poly, den: Poly) -> Poly:
    """Exact quotient num/den in the polynomial ring.

    Raises InexactDivisionError (carrying the first obstruction term) when
    den does not divide num.
    """
    _check_same_ring(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = num.ring
    md, cd = den.leading()
    rem = dict(num._terms)
    q = {}
    den_items = list(den._terms.items())
    while rem:
        mr = max(rem)
        cr = rem[mr]
        mq = ring.mon_divides(md, mr)
        if mq is None:
            raise InexactDivisionError(
                f"inexact division; leading remainder term {cstr(cr)}*{ring.mon_str(mr) or '1'}",
                obstruction=Poly(ring, {mr: cr}))
        cq = cdiv(cr, cd)
        q[mq] = cq
        for m2, c2 in den_items:
            m = mq + m2
            c = cmul(cq, c2)
            if m in rem:
                s = csub(rem[m], c)
                if cis_zero(s):
                    del rem[m]
                else:
                    rem[m] = s
            else:
                rem[m] = cneg(c)
    return Poly(ring, q)


def poly_divides(den: Poly, num: Poly) -> bool:
    try:
        poly_exact_div(num, den)
        return True
    except InexactDivisionError:
        return False


def poly_sqrt(f: Poly):
    """Write f = u * g**2 with u a unit in {1, -1, i, -i}.

    Returns (g, u) with g normalized so its graded-lex leading coefficient
    has positive real part (or zero real part and positive imaginary part).
    Units 1 and -1 are preferred, so that a real polynomial square comes back
    with a real root.  Raises NotASquareError otherwise.
    """
    ring = f.ring
    if f.is_zero():
        return ring.zero, 1
    mf, cf = f.leading()
    exps = ring.unpack(mf)
    if any(e & 1 for e in exps):
        raise NotASquareError("odd exponent in leading monomial",
                              obstruction=Poly(ring, {mf: cf}))
    mg = ring.pack(tuple(e >> 1 for e in exps))
    # Prefer the unit that makes the root's leading coefficient real, so a
    # real square comes back with a real root and the unit carries the sign.
    unit = None
    cg = None
    candidates = []
    for u in (1, -1, GaussRat(0, 1), GaussRat(0, -1)):
        root = csqrt(cdiv(cf, u))
        if root is not None:
            candidates.append((u, root))
    for u, root in candidates:
        is_real = isinstance(root, int) or root.im == 0
        if is_real:
            unit, cg = u, root
            break
    if unit is None and candidates:
        unit, cg = candidates[0]
    if unit is None:
        raise NotASquareError("leading coefficient is not a unit times a square",
                              obstruction=Poly(ring, {mf: cf}))
    g = Poly(ring, {mg: cg})
    two_u_cg = cmul(2, cmul(unit, cg))
    r = f - g * g * unit
    guard = 0
    while not r.is_zero():
        guard += 1
        if guard > 10000:
            raise NotASquareError("square-root recursion failed to terminate")
        mr, cr = r.leading()
        mt = ring.mon_divides(mg, mr)
        if mt is None or mr >= mf:
            raise NotASquareError("not a perfect square up to a unit",
                                  obstruction=Poly(ring, {mr: cr}))
        t = Poly(ring, {mt: cdiv(cr, two_u_cg)})
        r = r - (g * t * 2 + t * t) * unit
        g = g + t
    mg2, cg2 = g.leading()
    lead_re, lead_im = (Fraction(cg2), Fraction(0)) if isinstance(cg2, int) else (cg2.re, cg2.im)
    if lead_re < 0 or (lead_re == 0 and lead_im < 0):
        g = -g
    return g, unit


def poly_degree(f: Poly, grading_index: int = 0):
    """Weighted degree for one grading; HETEROGENEOUS if mixed; None for 0."""
    if f.is_zero():
        return None
    ring = f.ring
    degs = {ring.mon_weighted_degree(m, grading_index) for m in f._terms}
    if len(degs) == 1:
        return degs.pop()
    return HETEROGENEOUS


def poly_total_weighted_degree(f: Poly):
    """Degree for the sum of all declared gradings (None / HETEROGENEOUS as above)."""
    if f.is_zero():
        return None
    ring = f.ring
    degs = set()
    for m in f._terms:
        degs.add(sum(ring.mon_weighted_degree(m, k) for k in range(len(ring.gradings))))
    if len(degs) == 1:
        return degs.pop()
    return HETEROGENEOUS


def poly_is_homogeneous(f: Poly, degree_vector) -> bool:
    """True iff every term has the given degree for every grading (0 passes)."""
    ring = f.ring
    for m in f._terms:
        for k in range(len(ring.gradings)):
            if ring.mon_weighted_degree(m, k) != degree_vector[k]:
                return False
    return True


def poly_eval(f: Poly, assignment):
    """Exact value of f at a point given as {var name (or index): coefficient}."""
    ring = f.ring
    point = {}
    for key, value in assignment.items():
        k = key if isinstance(key, int) else ring._index[key]
        point[k] = cfrom(value)
    missing = f.variables() - set(point)
    if missing:
        names = ", ".join(ring.var_names[k] for k in sorted(missing))
        raise KeyError(f"assignment misses variables: {names}")
    total = 0
    for m, c in f._terms.items():
        val = c
        for k, s in enumerate(ring._shifts):
            e = (m >> s) & _MASK
            if e:
                base = point[k]
                p = base
                for _ in range(e - 1):
                    p = cmul(p, base)
                val = cmul(val, p)
        total = cadd(total, val)
    return cnorm(total) if not isinstance(total, int) else total


def poly_substitute(f: Poly, target: PolyRing, images: dict) -> Poly:
    """Ring map sending each variable to the given target polynomial.

    images maps variable names of f.ring to Poly over target.  Every
    occurring variable must be covered.
    """
    ring = f.ring
    imgs = {}
    for name, g in images.items():
        imgs[ring._index[name]] = g
    missing = f.variables() - set(imgs)
    if missing:
        names = ", ".join(ring.var_names[k] for k in sorted(missing))
        raise KeyError(f"substitution misses variables: {names}")
    out = target.zero
    pow_cache = {}
    for m, c in f.packed_items():
        val = target.const(c)
        for k, s in enumerate(ring._shifts):
            e = (m >> s) & _MASK
            if e:
                key = (k, e)
                p = pow_cache.get(key)
                if p is None:
                    p = imgs[k] ** e
                    pow_cache[key] = p
                val = val * p
        out = out + val
    return out


# -- canonical text parsing --


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"parse error at {self.pos} in {self.text!r}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Poly:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            value = -self.term()
        else:
            if ch == "+":
                self.pos += 1
            value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> Poly:
        value = self.power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.power()
            elif ch == "/":
                self.pos += 1
                den = self.power()
                if den.total_degree() not in (0, None) or den.is_zero():
                    self.error("division only by nonzero constants")
                value = value * self.ring.const(cdiv(1, den.constant_term()))
            else:
                return value

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.integer()
        return base

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def atom(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch.isdigit():
            return self.ring.const(self.integer())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                                 or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "i":
                return self.ring.const(GaussRat(0, 1))
            if name not in self.ring._index:
                self.error(f"unknown variable {name!r}")
            return self.ring.var(name)
        self.error(f"unexpected character {ch!r}")


def poly_parse(ring: PolyRing, text: str) -> Poly:
    p = _Parser(ring, text)
    value = p.expr()
    if p.peek():
        p.error("trailing input")
    return value
