"""Finite fields F_p and F_{p^k} (k <= 4).

Elements are stored as integer codes ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``
where ``(c0, ..., c_{k-1})`` are the coordinates in the basis 1, t, ..., t^(k-1)
and t is a root of the field modulus.  Polynomials keep raw codes for speed;
``FieldElement`` is the value object handed to users.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import ParseError, PreconditionError

MAX_EXTENSION_DEGREE = 4
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- univariate helpers over F_p, coefficient lists low-to-high -------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_rem(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility over F_p by trial division with every monic factor
    of degree at most half the degree."""
    coeffs = _trim(coeffs)
    k = len(coeffs) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not _upoly_rem(coeffs, divisor, p):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, coefficients compared
    lexicographically from t^(k-1) down to the constant term."""
    for head in product(range(p), repeat=k):
        coeffs = tuple(reversed(head)) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise PreconditionError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldSpec:
    """The field F_{p^k} with a fixed modulus.

    Arithmetic methods (``add``, ``mul``, ...) act on integer codes.
    Instances are immutable and compare equal when (p, k, modulus) agree.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise PreconditionError(f"characteristic must be prime, got {p!r}")
        if not 1 <= k <= MAX_EXTENSION_DEGREE:
            raise PreconditionError(f"extension degree must be in 1..{MAX_EXTENSION_DEGREE}, got {k}")
        if k == 1:
            if modulus not in (None, (), []):
                raise PreconditionError("prime fields carry no modulus")
            modulus = None
        else:
            if modulus is None:
                modulus = find_modulus(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise PreconditionError(f"modulus must be monic of degree {k}: {list(modulus)}")
            if not is_irreducible(modulus, p):
                raise PreconditionError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k
        if k == 1:
            self._setup_prime()
        else:
            self._setup_extension()

    # -- construction ---------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def get(p: int, k: int = 1) -> FieldSpec:
        return FieldSpec(p, k)

    def _setup_prime(self):
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: -a % p
        self.mul = lambda a, b: a * b % p

    def _setup_extension(self):
        p, k, q = self.p, self.k, self.q
        self._coords = [tuple((c // p ** i) % p for i in range(k)) for c in range(q)]
        weights = [p ** i for i in range(k)]

        def encode(coords):
            return sum(c * w for c, w in zip(coords, weights))

        self._encode = encode
        neg = [encode(tuple(-c % p for c in cs)) for cs in self._coords]
        self._neg_table = neg
        if p == 2:
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        elif q <= _ADD_TABLE_LIMIT:
            table = [[encode(tuple((x + y) % p for x, y in zip(ca, cb))) for cb in self._coords]
                     for ca in self._coords]
            self.add = lambda a, b: table[a][b]
            self.sub = lambda a, b: table[a][neg[b]]
            self.neg = lambda a: neg[a]
        else:
            coords = self._coords
            self.add = lambda a, b: encode(tuple((x + y) % p for x, y in zip(coords[a], coords[b])))
            self.sub = lambda a, b: encode(tuple((x - y) % p for x, y in zip(coords[a], coords[b])))
            self.neg = lambda a: neg[a]

        # Discrete logarithms with respect to a primitive element.
        factors = _prime_factors(q - 1)
        for g in range(2 if q > 2 else 1, q):
            if all(self._raw_pow(g, (q - 1) // r) != 1 for r in factors):
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._raw_mul(x, g)
        self._exp, self._log, self._order = exp, log, q - 1

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        self.mul = mul

    def _raw_mul(self, a, b):
        p, k, m = self.p, self.k, self.modulus
        ca, cb = self._coords[a], self._coords[b]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for i in range(k + 1):
                    prod[top - k + i] = (prod[top - k + i] - c * m[i]) % p
        return self._encode(tuple(prod[:k]))

    def _raw_pow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return result

    # -- code-level arithmetic -------------------------------------------

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(self._order - self._log[a]) % self._order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n, self.p) if n >= 0 else pow(pow(a, -1, self.p), -n, self.p)
        return self._exp[(self._log[a] * n) % self._order]

    def frob(self, a: int) -> int:
        return a if self.k == 1 else self.pow(a, self.p)

    def frob_inv(self, a: int) -> int:
        return a if self.k == 1 else self.pow(a, self.p ** (self.k - 1))

    def from_int(self, n: int) -> int:
        return n % self.p

    def coords(self, a: int) -> tuple[int, ...]:
        if self.k == 1:
            return (a,)
        return self._coords[a]

    def encode(self, coords) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.k:
            raise PreconditionError(f"expected {self.k} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.p for c in coords):
            raise PreconditionError(f"coordinates must lie in [0, {self.p}): {list(coords)}")
        return coords[0] if self.k == 1 else self._encode(coords)

    # -- element-level API ---------------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Integers map into the prime subfield; sequences are coordinates."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise PreconditionError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.encode(value))

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of t (only for k > 1)."""
        if self.k == 1:
            raise PreconditionError("prime field has no generator t")
        return FieldElement(self, self.p)

    def elements(self):
        for c in range(self.q):
            yield FieldElement(self, c)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self._coords[a]) + "]"

    def parse(self, text: str) -> int:
        """Parse element syntax into a code."""
        s = text.strip()
        try:
            if s.startswith("["):
                if not s.endswith("]"):
                    raise ValueError
                parts = [x.strip() for x in s[1:-1].split(",")]
                return self.encode(int(x) for x in parts)
            return int(s) % self.p
        except ValueError:
            raise ParseError(f"bad field element {text!r}") from None

    def to_json(self) -> dict:
        out = {"p": self.p, "k": self.k}
        if self.k > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        try:
            p, k = int(obj["p"]), int(obj.get("k", 1))
        except (KeyError, TypeError, ValueError):
            raise PreconditionError(f"bad field description {obj!r}") from None
        modulus = obj.get("modulus")
        if k == 1 or modulus is None:
            return cls.get(p, k)
        spec = cls(p, k, modulus)
        default = cls.get(p, k)
        return default if default == spec else spec

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"FieldSpec(p={self.p})"
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


class FieldElement:
    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def coords(self) -> tuple[int, ...]:
        return self.spec.coords(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise PreconditionError(f"field mismatch: {self.spec!r} vs {other.spec!r}")
            return other.code
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.code, n))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.code))

    def __str__(self):
        return self.spec.format(self.code)

    def __repr__(self):
        return f"FieldElement({self.spec.format(self.code)} in F_{self.spec.q})"


def frobenius(a: FieldElement, inverse: bool = False) -> FieldElement:
    """a^p, or the unique p-th root a^(p^(k-1)) when ``inverse`` is set."""
    spec = a.spec
    code = spec.frob_inv(a.code) if inverse else spec.frob(a.code)
    return FieldElement(spec, code)


def ff_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.spec != b.spec:
        raise PreconditionError("operands live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise PreconditionError(f"unknown operation {op!r}")
