"""Arithmetic in the binary extension fields GF(2^8) and GF(2^16).

Elements are plain Python ints in ``[0, Q)``.  Each :class:`Field` also
carries log/antilog tables so whole numpy arrays of symbols can be
multiplied at once, which is what the codec and repair paths use.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ParameterError

DEFAULT_POLYNOMIALS = {8: 0x11B, 16: 0x1100B}
SUPPORTED_WIDTHS = (8, 16)


def clmul_mod(a: int, b: int, poly: int, width: int) -> int:
    """Carry-less product of ``a`` and ``b`` reduced modulo ``poly``.

    Bit-serial and slow; used to seed the tables and as a test oracle.
    """
    top = 1 << width
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return result


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg(poly) // 2."""
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if _poly_mod(poly, divisor) == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def _clpow(a: int, e: int, poly: int, width: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = clmul_mod(result, a, poly, width)
        a = clmul_mod(a, a, poly, width)
        e >>= 1
    return result


def _find_generator(poly: int, width: int) -> int:
    order = (1 << width) - 1
    factors = _prime_factors(order)
    for g in range(2, 1 << width):
        if all(_clpow(g, order // p, poly, width) != 1 for p in factors):
            return g
    raise ParameterError(f"no generator found for polynomial {poly:#x}")


class Field:
    """GF(2^width) with a fixed reduction polynomial.

    Immutable once built; share instances freely (see :func:`get_field`).
    """

    def __init__(self, width: int = 8, poly: int | None = None) -> None:
        if width not in SUPPORTED_WIDTHS:
            raise ParameterError(f"field width must be 8 or 16, got {width}")
        if poly is None:
            poly = DEFAULT_POLYNOMIALS[width]
        if poly.bit_length() - 1 != width or not is_irreducible(poly):
            raise ParameterError(
                f"{poly:#x} is not an irreducible polynomial of degree {width}"
            )
        self.width = width
        self.poly = poly
        self.order = 1 << width
        self.dtype = np.dtype(np.uint8 if width == 8 else np.uint16)
        self.generator = _find_generator(poly, width)

        q1 = self.order - 1
        exp = np.zeros(4 * self.order, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = clmul_mod(x, self.generator, poly, width)
        exp[q1 : 2 * q1] = exp[:q1]
        # log(0) points into the zero tail of exp, so any product with 0 is 0.
        log[0] = 2 * q1
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    def __repr__(self) -> str:
        return f"Field(width={self.width}, poly={self.poly:#x})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and self.width == other.width
            and self.poly == other.poly
        )

    def __hash__(self) -> int:
        return hash((self.width, self.poly))

    @property
    def symbol_bytes(self) -> int:
        return self.width // 8

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ParameterError(f"{a} is not an element of GF(2^{self.width})")
        return a

    # scalar arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self._exp_list[self.order - 1 - self._log_list[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]

    # array arithmetic

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of two broadcastable arrays (or scalars)."""
        out = self._exp[self._log[a] + self._log[b]]
        return out.astype(self.dtype)

    def scale(self, c: int, arr) -> np.ndarray:
        """Multiply every symbol of ``arr`` by the scalar ``c``."""
        arr = np.asarray(arr, dtype=self.dtype)
        if c == 0:
            return np.zeros_like(arr)
        if c == 1:
            return arr.copy()
        return self._exp[self._log_list[c] + self._log[arr]].astype(self.dtype)

    def inv_array(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        return self._exp[self.order - 1 - self._log[a]].astype(self.dtype)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.order, size=shape, dtype=np.int64).astype(self.dtype)


@lru_cache(maxsize=None)
def get_field(width: int = 8, poly: int | None = None) -> Field:
    """Cached :class:`Field` constructor; table setup for width 16 is not free."""
    return Field(width, poly)
