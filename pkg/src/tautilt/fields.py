"""Exact coefficient fields: the rationals and prime fields GF(p).

Every computation in this package happens over one of these two fields.
There is no floating point anywhere; rationals are Python Fractions
(arbitrary precision, always normalized) and GF(p) elements are ints in
range(p).
"""

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field Q with Fraction scalars."""

    kind = "rationals"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_string(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {s!r}") from exc

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def bit_size(self, a):
        # pivot-selection weight: total bits of numerator and denominator
        return a.numerator.bit_length() + a.denominator.bit_length()

    def to_string(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) with int scalars in range(p)."""

    kind = "prime_field"

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def from_string(self, s):
        if "/" in s:
            num, den = s.split("/", 1)
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(s))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return (a * pow(b, -1, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting zero in GF(p)")
        return pow(a, -1, self.p)

    def bit_size(self, a):
        # all nonzero residues are equally good pivots
        return 1

    def to_string(self, a):
        return str(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


def GF(p):
    return PrimeField(p)


def parse_field(text):
    """Parse a field tag: "Q" or "Fp:<p>"."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise FieldError(f"bad prime in field tag {text!r}") from exc
        return PrimeField(p)
    raise FieldError(f"unknown field tag {text!r} (expected \"Q\" or \"Fp:<p>\")")
