"""Seeded generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from plausible.algebra import Event, RandomQuantity, all_events, atoms_of
from plausible.assessment import Assessment, AssessmentEntry
from plausible.axioms import CoxTable, DTTable, KolmogorovTable
from plausible.preorder import ConePreorder


def random_cone(rng: random.Random, max_dim=4, max_gens=6, lo=-5, hi=5) -> ConePreorder:
    n = rng.randint(1, max_dim)
    gens = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(rng.randint(0, max_gens))]
    return ConePreorder(n, gens)


def random_event(rng, n, nonzero=False) -> Event:
    return Event(n=n, mask=rng.randint(1 if nonzero else 0, (1 << n) - 1))


def random_quantity(rng, n, lo=-5, hi=5) -> RandomQuantity:
    return RandomQuantity(Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3))) for _ in range(n))


class Layered:
    """Lexicographic probability: the first layer with mass on C decides E(.|C).

    A single strictly positive layer is an ordinary probability; more layers
    give nonzero events of probability zero with well defined conditionals.
    """

    def __init__(self, layers):
        self.layers = layers
        self.n = len(layers[0])

    @classmethod
    def positive(cls, rng, n):
        return cls([[Fraction(rng.randint(1, 9)) for _ in range(n)]])

    @classmethod
    def random(cls, rng, n):
        order = list(range(n))
        rng.shuffle(order)
        layers = []
        while order:
            k = rng.randint(1, len(order))
            head, order = order[:k], order[k:]
            layers.append([Fraction(rng.randint(1, 9)) if i in head else Fraction(0) for i in range(n)])
        return cls(layers)

    def e(self, x, c) -> Fraction:
        for w in self.layers:
            mass = sum(w[k] for k in c.indices)
            if mass:
                return sum(w[k] * x[k] for k in c.indices) / mass
        raise ValueError("zero condition")


def coherent_assessment(rng, model: Layered, m: int, events_only=False) -> Assessment:
    n = model.n
    entries = []
    seen = set()
    while len(entries) < m:
        d = random_event(rng, n, nonzero=True)
        if events_only or rng.random() < 0.5:
            x = RandomQuantity(random_event(rng, n).components)
        else:
            x = random_quantity(rng, n)
        if (x, d) in seen:
            continue
        seen.add((x, d))
        entries.append(AssessmentEntry(x, d, model.e(x, d)))
    return Assessment(n, tuple(entries))


PERTURBATIONS = ("unitarity", "additivity", "monotonicity", "bound")


def perturbed_assessment(rng, kind: str) -> Assessment:
    """At most four entries, always incoherent by construction."""
    n = rng.randint(2, 4)
    model = Layered.positive(rng, n)
    delta = Fraction(rng.randint(1, 5), rng.choice((2, 3, 7)))
    d = random_event(rng, n, nonzero=True)
    one = Event.one(n)
    entries = []
    if kind == "unitarity":
        entries.append(AssessmentEntry(one, d, 1 + delta if rng.random() < 0.5 else 1 - delta))
    elif kind == "additivity":
        mask_a = rng.randint(1, (1 << n) - 2)
        rest = ((1 << n) - 1) & ~mask_a
        mask_b = rest & rng.randint(1, (1 << n) - 1) or rest
        a, b = Event(n=n, mask=mask_a), Event(n=n, mask=mask_b)
        entries += [
            AssessmentEntry(a, d, model.e(a, d)),
            AssessmentEntry(b, d, model.e(b, d)),
            AssessmentEntry(a | b, d, model.e(a, d) + model.e(b, d) + delta),
        ]
    elif kind == "monotonicity":
        b = random_event(rng, n, nonzero=True)
        sub = b.mask & rng.randint(0, (1 << n) - 1)
        if sub == b.mask:
            sub &= sub - 1
        a = Event(n=n, mask=sub)
        pa = model.e(a, d)
        entries += [AssessmentEntry(a, d, pa), AssessmentEntry(b, d, pa - delta)]
    elif kind == "bound":
        a = random_event(rng, n)
        entries.append(AssessmentEntry(a, d, -delta if rng.random() < 0.5 else 1 + delta))
    else:
        raise ValueError(kind)
    extra = coherent_assessment(rng, model, rng.randint(0, 4 - len(entries))).entries
    keys = {(e.x, e.given) for e in entries}
    entries += [e for e in extra if (e.x, e.given) not in keys]
    rng.shuffle(entries)
    return Assessment(n, tuple(entries))


def subalgebra(rng, n, gens=2):
    atoms = atoms_of([random_event(rng, n) for _ in range(gens)], n)
    fam = []
    for mask in range(1 << len(atoms)):
        e = Event.zero(n)
        for i, a in enumerate(atoms):
            if (mask >> i) & 1:
                e = e | a
        fam.append(e)
    return atoms, fam


def kolmogorov_table(rng, n) -> KolmogorovTable:
    atoms, fam = subalgebra(rng, n, gens=rng.randint(0, 3))
    w = [Fraction(rng.randint(0, 6)) for _ in atoms]
    if not any(w):
        w[0] = Fraction(1)
    total = sum(w)
    vals = {}
    for e in fam:
        vals[e] = sum((wi for a, wi in zip(atoms, w) if (a & e).mask), Fraction(0)) / total
    return KolmogorovTable(n, vals)


def cox_table(rng, n) -> CoxTable:
    _, fam = subalgebra(rng, n, gens=rng.randint(1, 2))
    model = Layered.random(rng, n)
    return CoxTable(n, {(a, c): model.e(a, c) for a in fam for c in fam if c.mask})


def dt_table(rng, n) -> DTTable:
    model = Layered.random(rng, n)
    conds = set()
    for _ in range(rng.randint(1, 3)):
        conds.add(random_event(rng, n, nonzero=True))
    changed = True
    while changed:
        changed = False
        for c in list(conds):
            for d in list(conds):
                if (c | d) not in conds:
                    conds.add(c | d)
                    changed = True
    vals = {}
    for c in conds:
        for a in all_events(n):
            vals[(RandomQuantity(a.components), c)] = model.e(a, c)
        for _ in range(rng.randint(0, 2)):
            x = random_quantity(rng, n)
            vals[(x, c)] = model.e(x, c)
            vals[(x * 2, c)] = model.e(x * 2, c)
    return DTTable(n, vals, tuple(conds))
