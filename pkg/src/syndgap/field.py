"""Exact arithmetic in GF(q), q = p^m <= 2^16.

Elements are plain integers 0..q-1.  For m > 1 the integer sum(c_i p^i)
stands for the polynomial sum(c_i x^i) reduced modulo the field's modulus,
so x itself is the integer p.  All array operations accept numpy integer
arrays and broadcast like numpy.
"""
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotPrimePower

MAX_Q = 1 << 16
TABLE_Q = 256  # full q x q add/mul tables are kept up to this size


def _factor_prime_power(q):
    if q < 2 or q > MAX_Q:
        raise NotPrimePower(f"q={q} is not a prime power in [2, 2^16]")
    p = None
    for d in range(2, int(q**0.5) + 1):
        if q % d == 0:
            p = d
            break
    if p is None:
        return q, 1
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrimePower(f"q={q} has at least two distinct prime factors")
    return p, m


def _poly_mod(num, den, p):
    """Remainder of num modulo den; coefficient lists low to high, den monic."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    rem = [c % p for c in num[:dd]]
    return rem


def _monic_polys(p, deg):
    """All monic polynomials of the given degree, lexicographically ordered."""
    for low in range(p**deg):
        coeffs = []
        v = low
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        yield coeffs + [1]


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg <= 1:
        return deg == 1
    for dd in range(1, deg // 2 + 1):
        for f in _monic_polys(p, dd):
            if not any(_poly_mod(poly, f, p)):
                return False
    return True


def smallest_irreducible(p, m):
    # ordered by (c_{m-1}, ..., c_0) lexicographically, which is the integer order of sum c_i p^i
    for poly in _monic_polys(p, m):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class GF:
    """A finite field GF(p^m) with log/antilog tables."""

    def __init__(self, p, m, modulus=()):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        q = self.q
        self._digits = [p**i for i in range(m)]

        if m == 1:
            g = self._find_prime_generator()
            exp = [1]
            for _ in range(q - 2):
                exp.append(exp[-1] * g % p)
        else:
            exp = self._extension_powers()
        self.exp = np.array(exp + exp, dtype=np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        for i, v in enumerate(exp):
            self.log[v] = i

        idx = np.arange(q, dtype=np.int64)
        self.neg_table = self._slow_neg(idx)
        self.inv_table = np.zeros(q, dtype=np.int64)
        self.inv_table[1:] = self.exp[(q - 1 - self.log[1:]) % (q - 1)]
        self.add_table = None
        self.mul_table = None
        if q <= TABLE_Q:
            a, b = np.meshgrid(idx, idx, indexing="ij")
            self.add_table = self._slow_add(a, b)
            self.mul_table = self._slow_mul(a, b)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # construction helpers

    def _find_prime_generator(self):
        p = self.p
        if p == 2:
            return 1
        factors = [f for f in range(2, p) if (p - 1) % f == 0 and all(f % g for g in range(2, int(f**0.5) + 1))]
        for g in range(2, p):
            if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
                return g
        raise AssertionError("no generator")

    def _to_coeffs(self, v):
        return [(v // d) % self.p for d in self._digits]

    def _from_coeffs(self, c):
        return sum(int(ci) * d for ci, d in zip(c, self._digits))

    def _poly_mul_int(self, a, b):
        ca, cb = self._to_coeffs(a), self._to_coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self._from_coeffs(_poly_mod(prod, self.modulus, self.p))

    def _extension_powers(self):
        q = self.q
        order_target = q - 1
        for g in range(2, q):
            seq = [1]
            cur = 1
            for _ in range(q - 2):
                cur = self._poly_mul_int(cur, g)
                if cur == 1:
                    break
                seq.append(cur)
            if len(seq) == order_target:
                return seq
        raise AssertionError("no primitive element")

    def _slow_add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for d in self._digits:
            out += (((a // d) % self.p + (b // d) % self.p) % self.p) * d
        return out

    def _slow_neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros(a.shape, dtype=np.int64)
        for d in self._digits:
            out += ((-((a // d) % self.p)) % self.p) * d
        return out

    def _slow_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        res = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    # vectorized arithmetic

    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._slow_add(a, b)

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._slow_mul(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        a = int(a)
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def sum(self, a, axis=0):
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.add(out, row)
        return out

    def matmul(self, A, B):
        """Matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return (A @ B) % self.p
        vec = B.ndim == 1
        if vec:
            B = B[:, None]
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, k][:, None], B[k][None, :]))
        return out[:, 0] if vec else out

    def random(self, shape, rng):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def __call__(self, value):
        return FieldElement(self, value)


class FieldElement:
    """Scalar wrapper with operator overloading, for readable call sites."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not a canonical element of {field}")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return FieldElement(self.field, other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.power(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}({self.value})"


def build_field(q):
    """Construct a fresh, uncached field object."""
    p, m = _factor_prime_power(q)
    modulus = smallest_irreducible(p, m) if m > 1 else ()
    return GF(p, m, modulus)


@lru_cache(maxsize=None)
def field_make(q):
    """The field of size q, with the lexicographically smallest monic irreducible modulus."""
    return build_field(q)
