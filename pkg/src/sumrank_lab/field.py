"""Finite fields of odd characteristic and polynomials over them.

Elements are stored as integer codes in ``[0, q)``.  For a prime field the
code is the residue itself.  For an extension ``K = B[x]/(f)`` of degree
``n`` over a base field ``B`` with ``|B| = Q`` the code of
``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` is ``sum(c_i * Q**i)``, so codes of
towers flatten to base-``p`` digit strings with the constant term first.

Every arithmetic method on :class:`GF` accepts Python ints or numpy integer
arrays and broadcasts, which is what the exhaustive scans elsewhere in the
package rely on.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    FieldMismatch,
    IndexOutOfRange,
    NonMonicPolynomial,
    NonPrimeCharacteristic,
    PreconditionViolation,
    ReducibleModulus,
    ZeroPolynomial,
)

# full add/mul tables are built below this order, log tables above it
_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """A finite field: the prime field F_p or an extension of another GF."""

    def __init__(self, p: int, base: GF | None = None, modulus: Polynomial | None = None):
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.ext_degree = 1
            self.degree = 1
            self.order = p
            self._inv = np.zeros(p, dtype=np.int64)
            self._inv[1:] = [pow(a, p - 2, p) for a in range(1, p)]
        else:
            if modulus is None or modulus.field != base:
                raise FieldMismatch("modulus must be a polynomial over the base field")
            self.ext_degree = modulus.degree
            self.degree = base.degree * self.ext_degree
            self.order = base.order**self.ext_degree
            self._build_tables()

    # identity -----------------------------------------------------------------
    @property
    def key(self) -> tuple:
        if self.base is None:
            return (self.p,)
        return (self.base.key, self.modulus.coeffs)

    @property
    def q(self) -> int:
        return self.order

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}; {self.modulus} over {self.base!r})"

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, int(value) % self.order)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.order)]

    # coordinates over the base field --------------------------------------------
    def to_coords(self, a):
        """Coordinates of ``a`` over the base field (last axis, constant first)."""
        if self.base is None:
            return np.asarray(a)[..., None]
        return self._coords[np.asarray(a)]

    def from_coords(self, c):
        c = np.asarray(c, dtype=np.int64)
        if self.base is None:
            return c[..., 0]
        return c @ self._radix

    def digits(self, a: int) -> list[int]:
        """Base-p digits of a code, length = degree over the prime field."""
        out = []
        a = int(a)
        for _ in range(self.degree):
            out.append(a % self.p)
            a //= self.p
        return out

    # arithmetic -------------------------------------------------------------------
    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a, b]
        return self.from_coords(self.base.add(self.to_coords(a), self.to_coords(b)))

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        if self._mul is not None:
            return self._mul[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("zero has no inverse")
        if self.base is None:
            return self._inv[a]
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        a = int(a)
        if k < 0:
            a = int(self.inv(a))
            k = -k
        result = 1
        while k:
            if k & 1:
                result = int(self.mul(result, a))
            a = int(self.mul(a, a))
            k >>= 1
        return result

    def is_square(self, a: int) -> bool:
        return a == 0 or self.pow(a, (self.order - 1) // 2) == 1

    # table construction -------------------------------------------------------------
    def _build_tables(self) -> None:
        base, n, Q = self.base, self.ext_degree, self.base.order
        codes = np.arange(self.order, dtype=np.int64)
        self._radix = Q ** np.arange(n, dtype=np.int64)
        self._coords = (codes[:, None] // self._radix[None, :]) % Q

        gen = self._find_generator()
        # matrix of multiplication by gen, acting on coordinate columns
        mul_gen = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            prod = (gen * Polynomial.monomial(base, i)) % self.modulus
            mul_gen[: len(prod.coeffs), i] = prod.coeffs
        exp = np.zeros(self.order - 1, dtype=np.int64)
        vec = np.zeros(n, dtype=np.int64)
        vec[0] = 1
        for k in range(self.order - 1):
            exp[k] = int(vec @ self._radix)
            acc = np.zeros(n, dtype=np.int64)
            for i in range(n):
                acc = base.add(acc, base.mul(mul_gen[:, i], int(vec[i])))
            vec = np.asarray(acc, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(self.order - 1)
        self._exp, self._log = exp, log
        self.generator = int(exp[1]) if self.order > 2 else 1

        self._neg = self.from_coords(base.neg(self._coords))
        self._add = self._mul = None
        if self.order <= _TABLE_LIMIT:
            ca = self._coords[:, None, :]
            cb = self._coords[None, :, :]
            self._add = self.from_coords(base.add(ca, cb))
            la = log[:, None] + log[None, :]
            mul = exp[la % (self.order - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            self._mul = mul

    def _find_generator(self) -> Polynomial:
        base, f = self.base, self.modulus
        group = self.order - 1
        factors = prime_factors(group)
        one = Polynomial(base, (1,))
        candidates = itertools.chain([1 * base.order], range(2, self.order))
        for code in candidates:
            coeffs = [(code // base.order**i) % base.order for i in range(self.ext_degree)]
            g = Polynomial(base, coeffs)
            if g.is_zero:
                continue
            if g.powmod(group, f) != one:
                continue
            if all(g.powmod(group // ell, f) != one for ell in factors):
                return g
        if self.order == 2:  # pragma: no cover - characteristic 2 never built
            return one
        raise ReducibleModulus(f"{f} does not define a field")


@dataclass(frozen=True)
class FieldElement:
    """A value-semantic element of a :class:`GF`."""

    field: GF
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _check(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            return self.field(other).value
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, int(self.field.add(self.value, self._check(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self.value, self._check(other))))

    def __rsub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self._check(other), self.value)))

    def __mul__(self, other):
        return FieldElement(self.field, int(self.field.mul(self.value, self._check(other))))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, int(self.field.div(self.value, self._check(other))))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.inv(self.value)))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}"


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch ``op`` in {add, sub, mul, div, inv, pow}; ``b`` is the exponent for pow."""
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }[op]()


# --------------------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over a GF, coefficients as element codes, constant term first."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = [int(c) % self.field.order for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, field: GF, k: int, c: int = 1) -> Polynomial:
        return cls(field, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lead == 1

    def _same(self, other: Polynomial) -> None:
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._same(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        a = a + (0,) * (size - len(a))
        b = b + (0,) * (size - len(b))
        return Polynomial(F, tuple(int(F.add(x, y)) for x, y in zip(a, b)))

    def __neg__(self) -> Polynomial:
        return Polynomial(self.field, tuple(int(self.field.neg(c)) for c in self.coeffs))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._same(other)
        F = self.field
        if self.is_zero or other.is_zero:
            return Polynomial(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = int(F.add(out[i + j], F.mul(a, b)))
        return Polynomial(F, tuple(out))

    def scale(self, c: int) -> Polynomial:
        return Polynomial(self.field, tuple(int(self.field.mul(c, a)) for a in self.coeffs))

    def monic(self) -> Polynomial:
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        return self.scale(int(self.field.inv(self.lead)))

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._same(other)
        if other.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = int(F.inv(other.lead))
        quo = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = int(F.mul(c, inv_lead))
            quo[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = int(F.sub(rem[k - dq + j], F.mul(c, b)))
        return Polynomial(F, tuple(quo)), Polynomial(F, tuple(rem[:dq]))

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def powmod(self, e: int, mod: Polynomial) -> Polynomial:
        result = Polynomial(self.field, (1,)) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = int(F.add(F.mul(acc, x), c))
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)

    def to_list_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


_TERM = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, field: GF) -> Polynomial:
    """Parse ``"a0,a1,...,an"`` (constant first) or human form ``"x^2+x+2"``."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    if "x" not in text:
        return Polynomial(field, tuple(int(t) for t in text.split(",")))
    coeffs: dict[int, int] = {}
    for raw in text.replace("-", "+-").split("+"):
        if not raw:
            continue
        sign = -1 if raw.startswith("-") else 1
        m = _TERM.match(raw.lstrip("-"))
        if m is None:
            raise ValueError(f"cannot parse term {raw!r}")
        c = int(m.group(1)) if m.group(1) else 1
        k = 0 if m.group(2) is None else int(m.group(3) or 1)
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs)
    return Polynomial(field, tuple(coeffs.get(k, 0) for k in range(top + 1)))


def _monic_polys(field: GF, n: int) -> Iterator[Polynomial]:
    """Monic degree-n polynomials, constant coefficient varying fastest."""
    Q = field.order
    for idx in range(Q**n):
        low = [(idx // Q**j) % Q for j in range(n)]
        yield Polynomial(field, tuple(low) + (1,))


def poly_is_irreducible(f: Polynomial, base: GF | None = None) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    if base is not None and f.field != base:
        raise FieldMismatch("polynomial is not over the given base field")
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial")
    if f.degree < 1:
        raise PreconditionViolation("irreducibility needs degree >= 1")
    for d in range(1, f.degree // 2 + 1):
        for g in _monic_polys(f.field, d):
            if (f % g).is_zero:
                return False
    return True


def poly_is_primitive(f: Polynomial, base: GF | None = None) -> bool:
    """Irreducible, and x has multiplicative order exactly Q^n - 1 modulo f."""
    if base is not None and f.field != base:
        raise FieldMismatch("polynomial is not over the given base field")
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial")
    if not f.is_monic:
        raise NonMonicPolynomial(f"{f} is not monic")
    if not poly_is_irreducible(f):
        return False
    group = f.field.order**f.degree - 1
    x = Polynomial.monomial(f.field, 1)
    one = Polynomial(f.field, (1,))
    if x.powmod(group, f) != one:
        return False
    return all(x.powmod(group // ell, f) != one for ell in prime_factors(group))


@functools.lru_cache(maxsize=None)
def _primitive_list(base: GF, n: int, upto: int) -> tuple[Polynomial, ...]:
    found = []
    for f in _monic_polys(base, n):
        if poly_is_primitive(f):
            found.append(f)
            if len(found) > upto:
                break
    return tuple(found)


def find_primitive_poly(base: GF, n: int, index: int = 0) -> Polynomial:
    """The (index+1)-th primitive monic polynomial of degree n in lexicographic order."""
    if n < 1:
        raise PreconditionViolation("degree must be positive")
    found = _primitive_list(base, n, index)
    if len(found) <= index:
        raise IndexOutOfRange(
            f"only {len(found)} primitive polynomials of degree {n} over GF({base.order})"
        )
    return found[index]


def _as_poly(modulus, field: GF) -> Polynomial:
    if isinstance(modulus, Polynomial):
        return modulus
    if isinstance(modulus, str):
        return parse_poly(modulus, field)
    return Polynomial(field, tuple(modulus))


@functools.lru_cache(maxsize=None)
def _prime_field(p: int) -> GF:
    return GF(p)


@functools.lru_cache(maxsize=None)
def _extension(base: GF, modulus: Polynomial) -> GF:
    return GF(base.p, base, modulus)


def field_make(p: int, e: int = 1, modulus=None) -> GF:
    """Build F_{p^e}; without a modulus the least primitive polynomial is used."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if e < 1:
        raise PreconditionViolation("degree must be positive")
    prime = _prime_field(p)
    if modulus is None:
        if e == 1:
            return prime
        modulus = find_primitive_poly(prime, e, 0)
    modulus = _as_poly(modulus, prime)
    if modulus.degree != e:
        raise PreconditionViolation(f"modulus has degree {modulus.degree}, expected {e}")
    if not poly_is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    if e == 1 and modulus.is_monic and modulus.degree == 1:
        return prime
    return _extension(prime, modulus.monic())


def extension(base: GF, n: int, index: int = 0, modulus=None) -> GF:
    """F_{Q^n} as an extension of ``base`` (canonical primitive modulus by default)."""
    if modulus is None:
        modulus = find_primitive_poly(base, n, index)
    modulus = _as_poly(modulus, base)
    if not poly_is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus} is reducible over {base!r}")
    return _extension(base, modulus.monic())


def parse_field(text: str) -> GF:
    """``"9"`` / ``"3^2"`` / ``"3^2:x^2+1"`` -> GF."""
    spec, _, mod = text.partition(":")
    if "^" in spec:
        p, e = (int(t) for t in spec.split("^"))
    else:
        q = int(spec)
        p = prime_factors(q)[0] if q > 1 else q
        e = 1
        while p ** e < q:
            e += 1
        if p**e != q:
            raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_make(p, e, mod or None)


def nonsquare_z(field: GF) -> FieldElement:
    """Least non-square of F_q* under the code order."""
    squares = {int(field.mul(a, a)) for a in range(field.order)}
    for z in range(1, field.order):
        if z not in squares:
            return FieldElement(field, z)
    raise EvenCharacteristic("every element is a square")  # pragma: no cover


def iter_monic(field: GF, n: int) -> Iterable[Polynomial]:
    return _monic_polys(field, n)


def element_from_coeffs(field: GF, coeffs: Sequence[int]) -> FieldElement:
    value = sum(int(c) % field.p * field.p**i for i, c in enumerate(coeffs))
    return FieldElement(field, value)
