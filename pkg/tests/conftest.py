import random

import pytest

from paritychain import (
    Alphabet,
    LassoWord,
    ParityAutomaton,
    Transition,
    normalize_lasso,
)

T = Transition


def flower_automaton() -> ParityAutomaton:
    """Four-state flower: center 0 with petals through 1, 2, 3 whose return
    loops dominate at colors 1..5.  States: 0=center; letters a=0, b=1, c=2."""
    return ParityAutomaton(
        alphabet=Alphabet(("a", "b", "c")),
        state_count=4,
        initial=0,
        transitions=(
            T(0, 0, 1, 3), T(0, 1, 2, 4), T(0, 2, 3, 5),
            T(1, 0, 0, 1), T(1, 1, 2, 2), T(1, 2, 2, 2),
            T(2, 0, 3, 3), T(2, 1, 0, 5), T(2, 2, 3, 3),
            T(3, 0, 0, 5), T(3, 1, 0, 5), T(3, 2, 0, 5),
        ),
    )


# Hand-derived fixpoint colors for the flower: the a-edge out of the center
# drops 3 -> 2 once state 1 runs out of unprocessed cycles, and the b-edge
# out of state 2 drops 5 -> 4 the same way; everything else is already tight.
FLOWER_STREAMLINED_COLORS = {
    (0, 0): 2, (0, 1): 4, (0, 2): 5,
    (1, 0): 1, (1, 1): 2, (1, 2): 2,
    (2, 0): 3, (2, 1): 4, (2, 2): 3,
    (3, 0): 5, (3, 1): 5, (3, 2): 5,
}

WORD_CA = LassoWord((), (2, 0))
WORD_CABB = LassoWord((), (2, 0, 1, 1))
WORD_AA = LassoWord((), (0, 0))


@pytest.fixture
def flower() -> ParityAutomaton:
    return flower_automaton()


def random_lasso(rng: random.Random, letters: int, max_len: int = 6) -> LassoWord:
    prefix = tuple(rng.randrange(letters) for _ in range(rng.randrange(0, max_len + 1)))
    period = tuple(rng.randrange(letters) for _ in range(rng.randrange(1, max_len + 1)))
    return normalize_lasso(LassoWord(prefix, period))
