"""Finite truncation of the p-tower pattern embedding.

Each block k is a pair of residues mod p^(exponent k), with exponents at
least 2k+1.  A chain of elements branded by a digit in 0..p-1 divides down
by p inside each block; summing chain elements up a column along falling
diagonals turns a digit pattern into a table whose rows determine the
pattern above any nondecreasing column thresholds, and conversely.
"""

from dataclasses import dataclass
from math import gcd


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GadgetConfig:
    """Frame for the embedding: prime, grid size, block exponents, pattern.

    depth rows and width columns of digits in 0..prime-1; exponents default
    to the minimal legal tower 2k+1 and must never drop below it.
    """

    prime: int
    depth: int
    width: int
    exponents: tuple = None
    pattern: tuple = None

    def __post_init__(self):
        if not _is_prime(self.prime):
            raise ValueError("prime must be a prime number")
        if self.depth < 0 or self.width < 0:
            raise ValueError("grid sizes must be nonnegative")
        if self.depth > self.width:
            raise ValueError("depth must not exceed width")
        if self.exponents is None:
            object.__setattr__(self, "exponents",
                               tuple(2 * k + 1 for k in range(self.width)))
        else:
            exponents = tuple(self.exponents)
            if len(exponents) != self.width:
                raise ValueError("one exponent per column")
            for k, e in enumerate(exponents):
                if e < 2 * k + 1:
                    raise ValueError(
                        f"exponent {e} at column {k} is below 2k+1")
            object.__setattr__(self, "exponents", exponents)
        if self.pattern is None:
            object.__setattr__(self, "pattern", tuple(
                tuple(0 for _ in range(self.width))
                for _ in range(self.depth)))
        else:
            pattern = tuple(tuple(row) for row in self.pattern)
            if len(pattern) != self.depth or any(
                    len(row) != self.width for row in pattern):
                raise ValueError("pattern must fill the depth x width grid")
            for row in pattern:
                for v in row:
                    if not 0 <= v < self.prime:
                        raise ValueError("pattern digits must lie in 0..p-1")
            object.__setattr__(self, "pattern", pattern)

    def block_modulus(self, k):
        return self.prime ** self.exponents[k]


def chain_element(cfg: GadgetConfig, i, k, digit):
    """The i-th member of the dividing chain in block k, branded by a digit.

    Lies in p^(2k-i) times the block, has order exactly p^(i+1), scales to
    the previous member under multiplication by p, and distinct digits give
    distinct elements.
    """
    modulus = cfg.block_modulus(k)
    step = cfg.prime ** (cfg.exponents[k] - i - 1)
    return (step % modulus, (step * digit) % modulus)


def block_order(cfg: GadgetConfig, k, element):
    """Additive order of an element of block k."""
    modulus = cfg.block_modulus(k)
    return max(modulus // gcd(v, modulus) for v in element)


def gadget_build(cfg: GadgetConfig):
    """Table of diagonal sums of chain elements, zero below the diagonal.

    Row i, column k >= i sums the chain members 0..i branded by the pattern
    digits read up the column: entry j is branded by the digit at row i-j.
    """
    rows = []
    for i in range(cfg.depth):
        row = []
        for k in range(cfg.width):
            if k < i:
                row.append((0, 0))
                continue
            modulus = cfg.block_modulus(k)
            first = second = 0
            for j in range(i + 1):
                a0, a1 = chain_element(cfg, j, k, cfg.pattern[i - j][k])
                first += a0
                second += a1
            row.append((first % modulus, second % modulus))
        rows.append(tuple(row))
    return tuple(rows)


def tower_law_holds(cfg: GadgetConfig, table):
    """p times each row equals the row above, off the fresh diagonal column.

    The top row is annihilated by p outright.  At column k = i the lower
    entry is still zero while the upper one has just been born with order
    p^(i+1), which is exactly the finite defect the ambient direct sum
    absorbs; everywhere else the law is exact.
    """
    p = cfg.prime
    if cfg.depth == 0:
        return True
    for k in range(cfg.width):
        modulus = cfg.block_modulus(k)
        if any((p * v) % modulus for v in table[0][k]):
            return False
    for i in range(cfg.depth - 1):
        for k in range(cfg.width):
            if k == i:
                continue
            modulus = cfg.block_modulus(k)
            scaled = tuple((p * v) % modulus for v in table[i + 1][k])
            if scaled != tuple(table[i][k]):
                return False
    return True


def _check_thresholds(cfg, thresholds):
    thresholds = tuple(thresholds)
    if len(thresholds) != cfg.depth:
        raise ValueError("one threshold per row")
    previous = 0
    for t in thresholds:
        if not isinstance(t, int) or t < 0:
            raise ValueError("thresholds must be nonnegative integers")
        if t < previous:
            raise ValueError("thresholds must be nondecreasing")
        previous = t
    return thresholds


def gadget_equiv_check(cfg: GadgetConfig, pattern_a, pattern_b, thresholds):
    """Agreement of two patterns and of their tables above the thresholds.

    Returns (pattern_agree, table_agree), each quantified over rows i and
    columns k from thresholds[i] to the right edge, within the live region
    k >= i: row i of the table is zero to the left of the diagonal, so
    digits parked there brand nothing and are not compared.  On the live
    region the two flags always match: entry (i, k) depends only on the
    digits of rows 0..i in column k, and the chain elements separate
    digits.
    """
    thresholds = _check_thresholds(cfg, thresholds)
    cfg_a = GadgetConfig(cfg.prime, cfg.depth, cfg.width, cfg.exponents,
                         pattern_a)
    cfg_b = GadgetConfig(cfg.prime, cfg.depth, cfg.width, cfg.exponents,
                         pattern_b)
    table_a = gadget_build(cfg_a)
    table_b = gadget_build(cfg_b)
    pattern_agree = table_agree = True
    for i in range(cfg.depth):
        for k in range(min(max(thresholds[i], i), cfg.width), cfg.width):
            if cfg_a.pattern[i][k] != cfg_b.pattern[i][k]:
                pattern_agree = False
            if table_a[i][k] != table_b[i][k]:
                table_agree = False
    return (pattern_agree, table_agree)
