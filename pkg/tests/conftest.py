import random

import hypothesis.strategies as st
from hypothesis import settings

from nomprop.sampling import random_nmt, random_perm, random_smt
from nomprop.theories import model_signature

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SIG_F = model_signature("F")
SIG_R = model_signature("R")

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@st.composite
def nmt_terms(draw, sig=SIG_F, permapp=True, boxed=False):
    rng = random.Random(draw(seeds))
    return random_nmt(rng, sig, draw(st.integers(1, 14)), permapp=permapp, boxed=boxed)


@st.composite
def smt_terms(draw, sig=SIG_F):
    rng = random.Random(draw(seeds))
    return random_smt(rng, sig, draw(st.integers(1, 12)))


@st.composite
def perms(draw):
    return random_perm(random.Random(draw(seeds)), tuple("abcdefgh"))
