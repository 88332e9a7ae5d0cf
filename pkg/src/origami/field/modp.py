"""Sound non-membership certificates by reduction modulo a prime.

Let p >= 5 divide neither the discriminant of the tower's power-product
basis nor any denominator of the step parameters.  Then that basis spans the
integral closure of Z_(p) in the field, so a root in the field of a monic
p-integral polynomial has p-integral coordinates.  Choosing a root mod p for
each step gives a ring map from those elements onto F_p, and a root in the
field maps to a root mod p.  If the reduced polynomial has no root in F_p,
the field has none.
"""

import threading
from functools import lru_cache
from fractions import Fraction
from math import lcm

from sympy import primerange
from sympy.ntheory import sqrt_mod

from .tower import SQRT, flatten

_lock = threading.Lock()
_disc_cache = {}
_maps_cache = {}

PRIMES = list(primerange(5, 4000))
MAX_MAPS = 24


def _denominator(x):
    return lcm(*(Fraction(c).denominator for c in flatten(x.data, x.level)))


def _norm_to_q(x):
    from .extend import absolute_norm
    return absolute_norm(x)


def basis_discriminant(tower):
    """Discriminant of the power-product basis, from the tower formula
    d(L) = d(K)^[L:K] * N_K(d(L/K))."""
    with _lock:
        hit = _disc_cache.get(tower)
    if hit is not None:
        return hit
    d = Fraction(1)
    for k in range(1, tower.height + 1):
        param = tower.param(k)
        if tower.kind(k) == SQRT:
            rel = 4 * param
        else:
            rel = Fraction(27, 16) * (1 - param * param)
        d = d ** tower.degrees[k - 1] * _norm_to_q(rel)
    with _lock:
        _disc_cache[tower] = d
    return d


def _eval_mod(data, level, images, p):
    if level == 0:
        q = Fraction(data)
        return q.numerator * pow(q.denominator, -1, p) % p
    g = images[level - 1]
    acc, power = 0, 1
    for comp in data:
        acc = (acc + _eval_mod(comp, level - 1, images, p) * power) % p
        power = power * g % p
    return acc


def _roots_mod(kind, a, p):
    if kind == SQRT:
        if a % p and pow(a, (p - 1) // 2, p) != 1:
            return []
        return sqrt_mod(a, p, all_roots=True)
    return _chebyshev_table(p).get(a % p, [])


@lru_cache(maxsize=None)
def _chebyshev_table(p):
    """Preimages of 4r^3 - 3r mod p, keyed by value."""
    table = {}
    for r in range(p):
        table.setdefault((4 * r * r * r - 3 * r) % p, []).append(r)
    return table


def _maps(tower):
    """Up to MAX_MAPS pairs (p, generator images mod p) valid for the tower."""
    with _lock:
        hit = _maps_cache.get(tower)
    if hit is not None:
        return hit
    disc = basis_discriminant(tower)
    bad = disc.numerator * disc.denominator
    for k in range(1, tower.height + 1):
        bad *= _denominator(tower.param(k))
    out = []
    for p in PRIMES:
        if bad % p == 0:
            continue
        images = []
        for k in range(1, tower.height + 1):
            a = _eval_mod(tower.steps[k - 1].param, k - 1, images, p)
            roots = _roots_mod(tower.kind(k), a, p)
            if not roots:
                break
            images.append(roots[0])
        else:
            out.append((p, tuple(images)))
            if len(out) >= MAX_MAPS:
                break
    with _lock:
        _maps_cache[tower] = out
    return out


def has_no_root(kind, x):
    """True when some prime proves that z^2 = x (``kind`` sqrt) or
    4z^3 - 3z = x (``kind`` trisect) has no solution in x's field.  False
    means only that no certificate was found."""
    t = x.tower
    if t.height == 0:
        return False
    den = _denominator(x)
    for p, images in _maps(t):
        if den % p == 0:
            continue
        a = _eval_mod(x.data, t.height, images, p)
        if not _roots_mod(kind, a, p):
            return True
    return False
