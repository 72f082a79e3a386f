from hypothesis import strategies as st

from fareycf.cf import ContinuedFraction, normalize
from fareycf.exact import QuadraticSurd

squarefree = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 29, 30])


@st.composite
def surds(draw, max_abs=60):
    d = draw(squarefree)
    s = draw(st.integers(-9, 9).filter(bool))
    p = draw(st.integers(-max_abs, max_abs))
    q = draw(st.integers(1, 40))
    return QuadraticSurd(p, s, q, d)


@st.composite
def positive_surds(draw):
    x = draw(surds())
    if x.sign() < 0:
        x = -x
    return x


@st.composite
def periodic_cfs(draw, max_quotient=9, max_period=6, max_preperiod=4):
    a0 = draw(st.integers(0, max_quotient))
    pre = draw(st.lists(st.integers(1, max_quotient), max_size=max_preperiod))
    per = draw(st.lists(st.integers(1, max_quotient), min_size=1, max_size=max_period))
    return normalize(ContinuedFraction(a0, tuple(pre), tuple(per)))


@st.composite
def finite_cfs(draw, max_quotient=20):
    a0 = draw(st.integers(0, max_quotient))
    rest = draw(st.lists(st.integers(1, max_quotient), min_size=1, max_size=8))
    return normalize(ContinuedFraction(a0, tuple(rest), None))


@st.composite
def esp_cfs(draw, max_quotient=9, max_period=6):
    per = draw(st.lists(st.integers(1, max_quotient), min_size=1, max_size=max_period))
    if draw(st.booleans()):
        a0 = draw(st.integers(1, per[-1]))
        return normalize(ContinuedFraction(a0, (), tuple(per)))
    a1 = draw(st.integers(1, per[-1]))
    return normalize(ContinuedFraction(0, (a1,), tuple(per)))
