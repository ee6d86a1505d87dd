"""Exact integer polynomial arithmetic shared across the package.

Two small classes cover everything we need:

* ``IntPolynomial`` -- dense polynomials with integer coefficients,
  used for chromatic polynomials and their shifted variants.
* ``LaurentPolynomial`` -- sparse Laurent polynomials in one variable q,
  used for Jones-type state sums and Euler characteristics.

Everything is pure Python integers; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "binom",
    "IntPolynomial",
    "LaurentPolynomial",
]


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient via the falling factorial.

    Valid for any integer n (including negatives) and k >= 0:
    binom(n, k) = n (n-1) ... (n-k+1) / k!.  Returns 0 for k < 0.
    Examples: binom(-1, 0) == 1, binom(-1, 3) == -1, binom(2, 5) == 0.
    """
    if k < 0:
        return 0
    num = 1
    den = 1
    for j in range(k):
        num *= n - j
        den *= j + 1
    # the falling factorial of an integer is always divisible by k!
    return num // den


class IntPolynomial:
    """Polynomial with integer coefficients, stored lowest degree first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()) -> None:
        cs = list(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def variable(cls) -> "IntPolynomial":
        return cls((0, 1))

    # -- basic queries ---------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients, lowest degree first, no trailing zeros."""
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == (IntPolynomial((other,))._coeffs)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return IntPolynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self._coeffs])

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPolynomial":
        return IntPolynomial((other,)) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self._coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; works for int and Fraction inputs."""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def shift_argument(self, c: int) -> "IntPolynomial":
        """Return the polynomial p(x + c)."""
        shifted_var = IntPolynomial((c, 1))
        acc = IntPolynomial.zero()
        for coeff in reversed(self._coeffs):
            acc = acc * shifted_var + IntPolynomial((coeff,))
        return acc

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[str]:
        """JSON form: array of decimal-string coefficients, lowest first."""
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "IntPolynomial":
        return cls([int(s) for s in data])

    def format(self, var: str = "x") -> str:
        """Human-readable rendering, highest degree first."""
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
            parts.append(sign + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        return self.format()


class LaurentPolynomial:
    """Sparse Laurent polynomial in q with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        data: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = int(c)
            if c:
                data[int(e)] = data.get(int(e), 0) + c
                if data[int(e)] == 0:
                    del data[int(e)]
        self._terms = data

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def q_power(cls, e: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({e: coeff})

    @classmethod
    def from_coeff_run(cls, start_exp: int, step: int, coeffs: Sequence[int]) -> "LaurentPolynomial":
        """Build from a coefficient run c0 q^s + c1 q^(s+step) + ..."""
        return cls({start_exp + i * step: c for i, c in enumerate(coeffs)})

    # -- queries ----------------------------------------------------------

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, ascending exponent."""
        return sorted(self._terms.items())

    def coefficient(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == LaurentPolynomial({0: other})._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms())

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        data = dict(self._terms)
        for e, c in other._terms.items():
            data[e] = data.get(e, 0) + c
        return LaurentPolynomial(data)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPolynomial":
        return LaurentPolynomial({0: other}) - self

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: other * c for e, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        data: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                data[e] = data.get(e, 0) + c1 * c2
        return LaurentPolynomial(data)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k: int) -> "LaurentPolynomial":
        """Multiply by q^k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def substitute_inverse(self) -> "LaurentPolynomial":
        """The substitution q -> q^-1."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ValueError when the quotient is not exact."""
        if other.is_zero():
            raise ValueError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero()
        rem = dict(self._terms)
        div_terms = sorted(other._terms.items())
        lead_e, lead_c = div_terms[-1]
        # Any exact quotient has min exponent >= min_q; going below it means
        # the division does not terminate.
        min_q = min(self._terms) - div_terms[0][0]
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c != 0:
                raise ValueError("not divisible")
            qe = e - lead_e
            if qe < min_q:
                raise ValueError("not divisible")
            qc = c // lead_c
            quot[qe] = quot.get(qe, 0) + qc
            for de, dc in div_terms:
                te = qe + de
                rem[te] = rem.get(te, 0) - qc * dc
                if rem[te] == 0:
                    del rem[te]
        return LaurentPolynomial(quot)

    def evaluate(self, x):
        """Evaluate at a nonzero rational point."""
        acc = Fraction(0)
        fx = Fraction(x)
        for e, c in self._terms.items():
            acc += c * fx ** e
        return int(acc) if acc.denominator == 1 else acc

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[dict[str, int]]:
        """JSON form: list of {exp, coeff} records, ascending exponent."""
        return [{"exp": e, "coeff": c} for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, int]]) -> "LaurentPolynomial":
        return cls({int(rec["exp"]): int(rec["coeff"]) for rec in data})

    def __str__(self) -> str:
        """Compact rendering, ascending exponents: -q^-32+q^-30-2q^-28+..."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}q" if e == 1 else f"{head}q^{e}"
            parts.append(sign + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._terms!r})"
