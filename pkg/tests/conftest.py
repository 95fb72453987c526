"""Shared helpers for the suite: seeded random elements and places."""

from __future__ import annotations

import random

import pytest

from iqdescent.qfield import ALL_FIELDS, Place, QInt, QuadField, classify_prime


def random_qint(rng: random.Random, K: QuadField, norm_bound: int) -> QInt:
    """A uniform-ish lattice element with norm < norm_bound."""
    while True:
        if K.omega_trace == 0:
            bmax = int((norm_bound / -K.D) ** 0.5)
            b = rng.randint(-bmax, bmax) if bmax else 0
            rem = norm_bound + K.D * b * b
            amax = int(rem**0.5) if rem > 0 else 0
            a = rng.randint(-amax, amax) if amax else 0
        else:
            bmax = int((4 * norm_bound / -K.D) ** 0.5)
            b = rng.randint(-bmax, bmax) if bmax else 0
            rem = 4 * norm_bound + K.D * b * b
            umax = int(rem**0.5) if rem > 0 else 0
            u = rng.randint(-umax, umax) if umax else 0
            if (u - b) % 2:
                u += 1
            a = (u - b) // 2
        x = QInt(a, b, K)
        if x.norm() < norm_bound:
            return x


def random_place(rng: random.Random, chars=(2, 3, 5, 7)) -> Place:
    """A finite place with small residue characteristic, any field and kind."""
    while True:
        K = rng.choice(ALL_FIELDS)
        ell = rng.choice(chars)
        if ell != 2 and K.disc % ell == 0:
            continue
        st = classify_prime(K, ell)
        if st.kind == "split":
            gen = st.pi if rng.random() < 0.5 else st.pi_bar
            return Place(K, "split", "test", ell, gen, 1, 1)
        if st.kind == "inert":
            return Place(K, "inert", "test", ell, K.elem(ell), 1, 2)
        return Place(K, "ramified", "test", ell, st.pi, 2, 1)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5E1F)
