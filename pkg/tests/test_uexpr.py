import pytest
from hypothesis import given
from hypothesis import strategies as st

from paper_source import equation_body, latex_to_grammar, paper_contains
from twistlab import twistcat
from twistlab import uexpr as ux
from twistlab.matrix import Matrix, kron
from twistlab.reps import rep_by_name
from twistlab.scalars import S

FUND2 = [rep_by_name("fund")] * 2
DUAL2 = [rep_by_name("dual")] * 2


def ev(text, reps=FUND2):
    return ux.eval_expr(ux.parse(text), reps)


# -- parse / render

def test_parse_examples(fund):
    e = ux.parse("exp(-E23 (x) E12*exp(-lambda*sigma)) * exp((H + lambda*K) (x) sigma)")
    assert e.legs == 2 and set(ux.parameters(e)) == {"lambda"}
    assert ev("1 (x) 1").is_identity()
    fj = ux.parse("exp(H (x) sigma)")
    assert ux.eval_expr(fj, FUND2) == Matrix.identity(9) + kron(fund("H"), fund("E13"))
    src = latex_to_grammar(equation_body("twistpr").split("=", 1)[1])
    for reps in (FUND2, DUAL2):
        assert ux.eval_expr(ux.parse(src), reps) == ux.eval_expr(e, reps)
    assert paper_contains(r"\mbox{${\cal F}_{j}$ }=\exp \{H\otimes \sigma \}")


@pytest.mark.parametrize("bad", ["exp(E12", "E12 (x)", "E12 * * E13", "Q12", "E12 $ E13"])
def test_parse_errors(bad):
    with pytest.raises(ux.ExprError):
        ux.parse(bad)


def test_parse_error_reports_position():
    with pytest.raises(ux.ExprParseError) as err:
        ux.parse("E12 * (E13 + ")
    assert "position" in str(err.value) or getattr(err.value, "pos", None) is not None


LEG_WORDS = ["E12", "E23", "E13", "H", "K", "H12", "sigma", "exp(-sigma)", "H*E23", "E23^2",
             "(1 - H)*H", "exp(lambda*sigma)", "E21", "E32", "1/3*H13"]
leg_words = st.sampled_from(LEG_WORDS)


@st.composite
def two_leg(draw):
    terms = []
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        c = draw(st.sampled_from(["", "2*", "-", "1/2*", "lambda*"]))
        terms.append(f"{c}{draw(leg_words)} (x) {draw(leg_words)}")
    return " + ".join(terms)


@given(two_leg())
def test_render_round_trip(text):
    e = ux.parse(text)
    assert ux.parse(ux.render(e)) == e


@given(two_leg(), two_leg())
def test_eval_is_homomorphism(a, b):
    ea, eb = ux.parse(a), ux.parse(b)
    for reps in (FUND2, DUAL2):
        A, B = ux.eval_expr(ea, reps), ux.eval_expr(eb, reps)
        assert ux.eval_expr(ux.mul(ea, eb), reps) == A @ B
        assert ux.eval_expr(ux.add(ea, eb), reps) == A + B


# -- evaluation

def test_pprime_inverse():
    F = twistcat.get_twist("Pprime").expr()
    for reps in (FUND2, DUAL2):
        assert (ux.eval_expr(F, reps) @ ux.eval_expr(ux.inverse_exp_product(F), reps)).is_identity()


def test_non_nilpotent_exp_is_reported():
    with pytest.raises(ux.EvalError) as err:
        ev("exp(H12 (x) 1)")
    assert "H12" in str(err.value)


def test_sigma_tilde_definition(fund):
    xi = S("xi")
    st_ = ux.eval_expr(ux.parse("sigma_tilde"), [fund])
    assert st_ == fund("E13").scale(xi)


# -- Hopf maps

def test_coproduct_of_generator():
    assert ux.coproduct0(ux.parse("E13")) == ux.parse("E13 (x) 1 + 1 (x) E13")


def test_coproduct_of_jordanian_twist():
    f3 = [rep_by_name("fund")] * 3
    fj = twistcat.get_twist("j").expr()
    lhs = ux.coproduct0(fj, 0)
    rhs = ux.parse("exp((H (x) 1 + 1 (x) H) (x) sigma)")
    assert ux.eval_expr(lhs, f3) == ux.eval_expr(rhs, f3)


@pytest.mark.parametrize("g", ["E11", "E12", "E13", "E21", "E22", "E23", "E31", "E32", "E33", "sigma"])
def test_coassociativity(g):
    for r in ("fund", "dual"):
        reps = [rep_by_name(r)] * 3
        d = ux.coproduct0(ux.parse(g))
        left = ux.coproduct0(d, 0)
        right = ux.coproduct0(d, 1)
        assert ux.eval_expr(left, reps) == ux.eval_expr(right, reps)


@pytest.mark.parametrize("g", ["E12", "E13", "H", "sigma", "E23*E12"])
def test_counit_coproduct(g):
    e = ux.parse(g)
    d = ux.coproduct0(e)
    for leg in (0, 1):
        assert ux.eval_expr(ux.counit(d, leg), [rep_by_name("fund")]) == ux.eval_expr(e, [rep_by_name("fund")])


def test_counit_and_antipode_examples():
    assert ux.counit_scalar(ux.parse("sigma")) == 0
    assert ux.antipode(ux.parse("E13")) == ux.parse("-E13")
    F = twistcat.get_twist("Pprime").expr()
    assert ux.counit(F, 0) == ux.ONE_NODE
    assert ux.counit(F, 1) == ux.ONE_NODE
    assert paper_contains(r"(\epsilon \otimes  id)({\cal F}) = (id \otimes  \epsilon)({\cal F})=1")


@pytest.mark.parametrize("g", ["E11", "E12", "E13", "E21", "E22", "E23", "E31", "E32", "E33"])
def test_undeformed_antipode_axiom(g):
    # m (S (x) id) Delta(x) = eps(x) 1
    for r in ("fund", "dual"):
        rho = rep_by_name(r)
        terms = ux.sweedler_expand(ux.coproduct0(ux.parse(g)), [rho, rho])
        out = Matrix.zeros(rho.dim)
        for c, (a, b) in terms:
            out = out + (ux.eval_expr(ux.antipode(a), [rho]) @ ux.eval_expr(b, [rho])).scale(c)
        assert out.is_zero()


def test_antipode_of_exponential_product(fund):
    e = ux.parse("exp(sigma)*E12")
    s = ux.antipode(e)
    assert ux.eval_expr(s, [fund]) == -fund("E12") @ ux.eval_expr(ux.parse("exp(-sigma)"), [fund])


# -- Sweedler

def test_sweedler_jordanian(fund):
    fj = twistcat.get_twist("j").expr()
    terms = ux.sweedler_expand(fj, FUND2)
    assert len(terms) == 2
    assert (S(1), (ux.ONE_NODE, ux.ONE_NODE)) in terms
    assert (S(1), (ux.parse("H"), ux.parse("sigma"))) in terms


def test_sweedler_V_for_jordanian(fund):
    fj = twistcat.get_twist("j").expr()
    V = Matrix.zeros(3)
    for c, (a, b) in ux.sweedler_expand(fj, FUND2):
        V = V + (ux.eval_expr(a, [fund]) @ ux.eval_expr(ux.antipode(b), [fund])).scale(c)
    assert V == Matrix.identity(3) - fund("H") @ fund("E13")


@pytest.mark.parametrize("name", ["j", "Ecan", "LE", "LEprime", "Pprime", "Rtilde", "PprimeRtilde"])
@pytest.mark.parametrize("r", ["fund", "dual"])
def test_sweedler_reassembles(name, r):
    F = twistcat.get_twist(name).expr()
    reps = [rep_by_name(r)] * 2
    assert ux.reassemble(ux.sweedler_expand(F, reps), reps) == ux.eval_expr(F, reps)


def test_leg_mismatch():
    with pytest.raises(ux.ExprError):
        ux.eval_expr(ux.parse("E12 (x) E23"), [rep_by_name("fund")])


def test_sweedler_refuses_cartan_exponential():
    # exp of a Cartan tensor never truncates; the Reshetikhin factor is evaluated directly instead
    F = twistcat.get_twist("R").expr()
    with pytest.raises(ux.ExprError):
        ux.sweedler_expand(F, FUND2)
