import random

import pytest

from meridian.cli import preset_text
from meridian.fpgroups import Presentation, parse_presentation, reduce_word


def random_word(rng: random.Random, rank: int, max_len: int = 12):
    letters = [i for i in range(-rank, rank + 1) if i]
    return reduce_word(rng.choice(letters)
                       for _ in range(rng.randint(0, max_len)))


def random_presentation(rng: random.Random, max_rank: int = 4,
                        max_relators: int = 4) -> Presentation:
    rank = rng.randint(1, max_rank)
    names = tuple(f"g{i}" for i in range(1, rank + 1))
    relators = tuple(random_word(rng, rank)
                     for _ in range(rng.randint(0, max_relators)))
    return Presentation(names, relators)


@pytest.fixture(scope="session")
def presets():
    names = ("degtyarev-affine", "degtyarev-affine-xt", "degtyarev-projective",
             "p1-2-5-10", "p1-2-2-5-5", "c-2-3", "free2", "genus2")
    return {name: parse_presentation(preset_text(name, ".grp"))
            for name in names}
