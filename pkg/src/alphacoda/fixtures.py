"""Datasets compiled into the package.

``table1`` is the 30-row artificial three-part dataset whose points lie
close to a straight line in the ternary diagram; it is stored as text so
the CSV export reproduces the printed digits exactly. ``recovery`` is a
seeded synthetic sample that is exactly normal in isometric alpha
coordinates at ``alpha = 0.5``.
"""

from __future__ import annotations

import io
from importlib import resources

import numpy as np

from .simplex import Composition, CompositionDataset

TABLE1_CSV = """id,A,B,C
A1,0.4355095,0.3392920924,0.2251984
A2,0.4388882,0.2135973967,0.3475144
A3,0.4266460,0.0305602623,0.5427937
A4,0.4225122,0.4097265913,0.1677612
A5,0.4240518,0.3024372049,0.2735110
A6,0.4315424,0.3605322539,0.2079254
A7,0.4337943,0.2779268820,0.2882788
A8,0.4358406,0.0006831432,0.5634762
A9,0.4300394,0.1057353415,0.4642253
A10,0.4279817,0.2512896242,0.3207287
A11,0.4310879,0.1469908804,0.4219212
A12,0.4206820,0.2268498575,0.3524682
A13,0.4396177,0.3852283802,0.1751539
A14,0.4265380,0.1160721475,0.4573898
A15,0.4371975,0.2550170900,0.3077854
A16,0.4244092,0.0314046749,0.5441861
A17,0.4320087,0.1992476493,0.3687437
A18,0.4394902,0.2748886793,0.2856211
A19,0.4283819,0.0134845902,0.5581335
A20,0.4319368,0.0743081935,0.4937550
A21,0.4232230,0.2074545214,0.3693225
A22,0.4309724,0.3602299476,0.2087976
A23,0.4272409,0.2970880808,0.2756710
A24,0.4359625,0.0453307017,0.5187068
A25,0.4267075,0.4053411348,0.1679513
A26,0.4396363,0.1278193992,0.4325443
A27,0.4355290,0.0837220492,0.4807489
A28,0.4226007,0.0204375902,0.5569617
A29,0.4366681,0.2144233973,0.3489085
A30,0.4242957,0.3395783944,0.2361259
"""

#: Means printed under the table, as (closed geometric, arithmetic).
TABLE1_CLOSED_GEOMETRIC_MEAN = (0.4778500, 0.1432412430, 0.3789087)
TABLE1_ARITHMETIC_MEAN = (0.4306997, 0.2038899384, 0.3654103)

RECOVERY_ALPHA = 0.5
RECOVERY_N = 500
RECOVERY_SEED = 0
RECOVERY_CENTRE = (0.5, 0.3, 0.2)
RECOVERY_COV = ((0.25, 0.075), (0.075, 0.15))
RECOVERY_FILE = "recovery_alpha05.csv"


def load_fixture_table1() -> CompositionDataset:
    from .io import read_dataset

    return read_dataset(io.StringIO(TABLE1_CSV))


def make_recovery_dataset() -> CompositionDataset:
    """Regenerate the synthetic recovery sample from its seed."""
    from .likelihood import sample_normal_in_z

    X = sample_normal_in_z(
        RECOVERY_N,
        RECOVERY_ALPHA,
        np.array(RECOVERY_CENTRE),
        np.array(RECOVERY_COV),
        seed=RECOVERY_SEED,
    )
    rows = [Composition._trusted(r) for r in X]
    return CompositionDataset(rows, ("A", "B", "C"), [f"R{i + 1}" for i in range(len(rows))])


def recovery_csv() -> str:
    return resources.files(__package__).joinpath("data").joinpath(RECOVERY_FILE).read_text()


def load_fixture_recovery() -> CompositionDataset:
    """The shipped copy of :func:`make_recovery_dataset`, read from package data."""
    from .io import read_dataset

    return read_dataset(io.StringIO(recovery_csv()))


FIXTURES = {
    "table1": lambda: TABLE1_CSV,
    "recovery": recovery_csv,
}


def fixture_csv(name: str) -> str:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}") from None
