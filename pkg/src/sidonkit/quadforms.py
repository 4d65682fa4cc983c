"""Binary quadratic forms of negative discriminant and their class group.

Composition is done on the ideal side: the form (a, b, c) corresponds to
the lattice a*Z + ((b + sqrt(disc))/2)*Z, products of two such lattices
are spanned by four explicit elements, and a two-step Hermite reduction
recovers the (a, b) of the product.  This one code path handles every
case uniformly, including squaring two-torsion classes such as
(2, 0, 3)^2 = (1, 0, 6) where shortcut formulas need special casing.
"""

from __future__ import annotations

import math
from functools import total_ordering

from .groups import GroupPresentation


class FormError(ValueError):
    pass


@total_ordering
class BinaryQF:
    """Primitive positive definite form a x^2 + b x y + c y^2."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise FormError(f"({a},{b},{c}) is not positive definite")
        if math.gcd(a, b, c) != 1:
            raise FormError(f"({a},{b},{c}) is imprimitive")
        self.a, self.b, self.c = a, b, c

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __eq__(self, other):
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __lt__(self, other):
        return (self.a, self.b, self.c) < (other.a, other.b, other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"BinaryQF({self.a}, {self.b}, {self.c})"

    def is_reduced(self):
        return (-self.a < self.b <= self.a < self.c) or (
            0 <= self.b <= self.a == self.c
        )

    def reduced(self):
        a, b, c = self.a, self.b, self.c
        while True:
            if a > c:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                # translate b into (-a, a]
                r = b % (2 * a)
                if r > a:
                    r -= 2 * a
                c += (r * r - b * b) // (4 * a)
                b = r
                continue
            break
        if a == c and b < 0:
            b = -b
        return BinaryQF(a, b, c)

    def inverse(self):
        return BinaryQF(self.a, -self.b, self.c).reduced()

    def __mul__(self, other):
        if self.disc != other.disc:
            raise FormError("discriminant mismatch")
        disc = self.disc
        a1, b1 = self.a, self.b
        a2, b2 = other.a, other.b
        # spanning set of the product lattice, elements (x + y sqrt(disc))/2
        rows = [
            (2 * a1 * a2, 0),
            (a1 * b2, a1),
            (a2 * b1, a2),
            ((b1 * b2 + disc) // 2, (b1 + b2) // 2),
        ]
        cx, cy = rows[0]
        tail = []
        for x, y in rows[1:]:
            if cy == 0:
                tail.append(cx)
                cx, cy = x, y
                continue
            g, u, v = _xgcd(cy, y)
            tail.append((cy // g) * x - (y // g) * cx)
            cx, cy = u * cx + v * x, g
        m0 = 0
        for x in tail:
            m0 = math.gcd(m0, x)
        # the ideal is closed under multiplication by sqrt(disc), which
        # forces cy | cx and keeps a, b integral
        if m0 % (2 * cy) or cx % cy:
            raise FormError("product lattice is not an ideal")  # pragma: no cover
        a = m0 // (2 * cy)
        b = (cx // cy) % (2 * a)
        num = b * b - disc
        if num % (4 * a):
            raise FormError("product lattice is not an ideal")  # pragma: no cover
        return BinaryQF(a, b, num // (4 * a)).reduced()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = principal_form(self.disc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_json(self):
        return [self.a, self.b, self.c]


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _check_disc(disc):
    if disc >= 0 or disc % 4 not in (0, 1):
        raise FormError(f"{disc} is not a negative discriminant")


def principal_form(disc):
    _check_disc(disc)
    b = disc % 2
    return BinaryQF(1, b, (b * b - disc) // 4)


def reduced_forms(disc):
    """All primitive reduced forms of the given discriminant, sorted."""
    _check_disc(disc)
    forms = []
    a_max = math.isqrt(-disc // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if math.gcd(a, math.gcd(b, c)) != 1:
                continue
            forms.append(BinaryQF(a, b, c))
    return sorted(forms)


def fundamental_discriminant(D):
    """Discriminant of the quadratic field Q(sqrt(-D)) for squarefree D >= 1."""
    if D < 1:
        raise FormError(f"need D >= 1, got {D}")
    r = D % 4
    if r == 3:
        return -D
    return -4 * D


def kronecker(disc, p):
    """Kronecker symbol (disc / p) for prime p: 1 split, -1 inert, 0 ramified."""
    if p == 2:
        if disc % 2 == 0:
            return 0
        return 1 if disc % 8 == 1 else -1
    r = pow(disc % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def splits(disc, p):
    return kronecker(disc, p) == 1


def prime_form(disc, p):
    """The class of a prime ideal above p: the form (p, b, .) with the
    smaller of the two valid b in [0, 2p)."""
    _check_disc(disc)
    if kronecker(disc, p) != 1:
        raise FormError(f"{p} does not split in discriminant {disc}")
    for b in range(2 * p):
        if (b * b - disc) % (4 * p) == 0:
            return BinaryQF(p, b, (b * b - disc) // (4 * p))
    raise FormError(f"no form of shape ({p}, b, .)")  # pragma: no cover


class ClassGroup:
    """Form class group of a negative discriminant.

    forms: sorted reduced representatives.  group: the same group in
    invariant factor form, with element(form) / form(element) moving
    between the two descriptions.
    """

    def __init__(self, disc):
        _check_disc(disc)
        self.disc = disc
        self.forms = tuple(f.reduced() for f in reduced_forms(disc))
        self.h = len(self.forms)
        self._pres = GroupPresentation(
            self.forms, lambda f, g: f * g, principal_form(disc)
        )
        self.group = self._pres.group

    def element(self, form):
        return self._pres.to_group[form.reduced()]

    def form(self, element):
        return self._pres.from_group[element]

    def to_json(self):
        return {
            "discriminant": self.disc,
            "class_number": self.h,
            "invariants": list(self.group.factors),
            "forms": [f.to_json() for f in self.forms],
        }
