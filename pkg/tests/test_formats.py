from importlib import resources
from pathlib import Path

import pytest

from conftest import flower_automaton
from paritychain import (
    Alphabet,
    CoBuchiAutomaton,
    FormatError,
    ParityAutomaton,
    Transition,
    complete_dpa,
    dpa_language_equiv,
    emit_dot,
    emit_hoa,
    emit_native,
    extract_chain,
    parse_hoa,
    parse_native,
    random_dpa,
    state_equivalence,
    streamline,
    validate_dpa,
)

T = Transition
GOLDEN = Path(__file__).parent / "golden"


class TestNative:
    def test_shipped_flower_file(self, flower):
        text = (resources.files("paritychain") / "data" / "fig1.aut").read_text()
        loaded = parse_native(text)
        assert loaded == flower
        assert loaded.state_count == 4
        assert len(loaded.transitions) == 12
        assert emit_native(loaded) == text

    def test_empty_document_is_syntax_error(self):
        with pytest.raises(FormatError) as err:
            parse_native("")
        assert err.value.line == 1

    def test_error_carries_position(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_native('{\n  "kind": oops\n}')

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip_random_dpa(self, seed):
        a = random_dpa(5, 4, 3, seed)
        assert parse_native(emit_native(a)) == a

    def test_round_trip_chain_level_keeps_gfg(self, flower):
        s = streamline(flower)
        chain = extract_chain(s, state_equivalence(s))
        text = emit_native(chain.levels[3])
        again = parse_native(text)
        assert isinstance(again, CoBuchiAutomaton)
        assert again.gfg_claimed
        assert again == chain.levels[3]
        assert '"gfg": true' in text

    def test_equal_automata_identical_bytes(self, flower):
        shuffled = ParityAutomaton(
            flower.alphabet,
            flower.state_count,
            flower.initial,
            tuple(reversed(flower.transitions)),
        )
        assert emit_native(shuffled) == emit_native(flower)

    def test_semantic_error_mentions_offender(self, flower):
        partial = ParityAutomaton(
            flower.alphabet,
            flower.state_count,
            flower.initial,
            flower.transitions[:-1],
        )
        text = emit_native(partial)
        with pytest.raises(FormatError, match="has no transition"):
            parse_native(text)
        assert not validate_dpa(parse_native(text, validate=False)).ok

    def test_streamlined_golden_bytes(self, flower):
        expected = (GOLDEN / "flower_streamlined.aut").read_text()
        assert emit_native(streamline(flower)) == expected

    def test_chain_level_five_golden_bytes(self, flower):
        s = streamline(flower)
        chain = extract_chain(s, state_equivalence(s))
        expected = (GOLDEN / "flower_chain_A5.aut").read_text()
        assert emit_native(chain.levels[5]) == expected


UNIVERSAL_1AP = """\
HOA: v1
States: 1
Start: 0
AP: 1 "go"
acc-name: parity min even 1
Acceptance: 1 Inf(0)
--BODY--
State: 0
[t] 0 {0}
--END--
"""


class TestHoa:
    def test_universal_one_ap(self):
        a = parse_hoa(UNIVERSAL_1AP)
        assert a.state_count == 1
        assert a.alphabet.letters == ("!go", "go")
        assert all(t.color == 0 for t in a.transitions)
        assert validate_dpa(a).ok

    def test_min_odd_rejected(self):
        text = UNIVERSAL_1AP.replace("min even", "min odd")
        with pytest.raises(FormatError, match="unsupported acceptance"):
            parse_hoa(text)

    def test_fixpoint_after_one_normalization(self):
        for seed in range(8):
            a = random_dpa(4, 3, 4, seed)
            text = emit_hoa(a)
            again = parse_hoa(text)
            assert emit_hoa(again) == text
            assert parse_hoa(emit_hoa(again)) == again

    def test_parse_emit_preserves_language(self):
        a = random_dpa(5, 3, 2, seed=3)
        b = parse_hoa(emit_hoa(a))
        relabeled = ParityAutomaton(
            b.alphabet, a.state_count, a.initial, a.transitions
        )
        assert dpa_language_equiv(relabeled, b)[0]

    def test_three_letter_alphabet_refused(self, flower):
        with pytest.raises(FormatError, match="native"):
            emit_hoa(flower)

    def test_universal_two_letter_golden(self):
        uni = ParityAutomaton(
            Alphabet(("a", "b")), 1, 0, (T(0, 0, 0, 0), T(0, 1, 0, 0))
        )
        assert emit_hoa(uni) == (GOLDEN / "universal2.hoa").read_text()

    def test_gca_emission_marks_rejecting_edges(self, flower):
        a = ParityAutomaton(
            Alphabet(("a", "b")), 1, 0, (T(0, 0, 0, 0), T(0, 1, 0, 1))
        )
        chain = extract_chain(streamline(a), state_equivalence(a))
        text = emit_hoa(chain.levels[1])
        assert "acc-name: co-Buchi" in text
        assert "Acceptance: 1 Fin(0)" in text
        assert "x-gfg: t" in text
        assert "[!0] 0 {0}" in text  # rejecting edge carries set 0
        assert "[0] 0\n" in text  # accepting edge carries no set

    def test_nondeterminism_rejected(self):
        text = UNIVERSAL_1AP.replace("[t] 0 {0}", "[t] 0 {0}\n[0] 0 {0}")
        with pytest.raises(FormatError, match="nondeterministic"):
            parse_hoa(text)

    def test_multiple_start_rejected(self):
        text = UNIVERSAL_1AP.replace("Start: 0", "Start: 0\nStart: 0")
        with pytest.raises(FormatError, match="single initial"):
            parse_hoa(text)

    def test_incomplete_reported_and_recoverable(self):
        text = UNIVERSAL_1AP.replace("[t] 0 {0}", "[0] 0 {0}")
        with pytest.raises(FormatError, match="incomplete"):
            parse_hoa(text)
        partial = parse_hoa(text, allow_incomplete=True)
        assert not validate_dpa(partial).ok
        assert validate_dpa(complete_dpa(partial)).ok

    def test_transition_needs_exactly_one_set(self):
        text = UNIVERSAL_1AP.replace("[t] 0 {0}", "[t] 0")
        with pytest.raises(FormatError, match="exactly one acceptance set"):
            parse_hoa(text)

    def test_acceptance_count_mismatch(self):
        text = UNIVERSAL_1AP.replace("Acceptance: 1 Inf(0)", "Acceptance: 3 Inf(0)")
        with pytest.raises(FormatError, match="declares 3 sets"):
            parse_hoa(text)

    def test_label_formula_expansion(self):
        text = """\
HOA: v1
States: 1
Start: 0
AP: 2 "x" "y"
acc-name: parity min even 2
Acceptance: 2 Inf(0) | (Fin(1))
--BODY--
State: 0
[0 | !0 & 1] 0 {0}
[!0 & !1] 0 {1}
--END--
"""
        a = parse_hoa(text)
        by_letter = {a.alphabet.letters[t.sym]: t.color for t in a.transitions}
        assert by_letter == {"!x&!y": 1, "x&!y": 0, "!x&y": 0, "x&y": 0}


class TestDot:
    def test_single_self_loop(self):
        a = ParityAutomaton(Alphabet(("a",)), 1, 0, (T(0, 0, 0, 0),))
        text = emit_dot(a)
        assert text.count(" -> ") == 2  # init arrow plus the one edge
        assert 's0 -> s0 [label="a/0"];' in text

    def test_flower_node_and_edge_counts(self, flower):
        text = emit_dot(flower)
        states = [line for line in text.splitlines() if line.strip().endswith(";") and line.strip().startswith("s") and "->" not in line]
        edges = [line for line in text.splitlines() if "->" in line and not line.strip().startswith("init")]
        assert len(states) == 4
        assert len(edges) == 12

    def test_byte_stable_and_golden(self, flower):
        assert emit_dot(flower) == emit_dot(flower_automaton())
        assert emit_dot(flower) == (GOLDEN / "flower.dot").read_text()

    def test_accepting_gca_edges_bold(self, flower):
        s = streamline(flower)
        chain = extract_chain(s, state_equivalence(s))
        text = emit_dot(chain.levels[5])
        assert "style=bold" in text
        bold = [line for line in text.splitlines() if "style=bold" in line]
        assert len(bold) == 4
