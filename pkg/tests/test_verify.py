import csv
import io
import json

import pytest

from lalg.report import FAILS, HOLDS
from lalg.verify import BUNDLES, CLAIM_IDS, REFINEMENT_NOTE, REGISTRY, verify_bundle


@pytest.fixture(scope="module")
def worked():
    return verify_bundle("paper")


def test_registry_ids_are_unique():
    ids = [c.claim_id for c in REGISTRY]
    assert len(ids) == len(set(ids))
    assert tuple(ids) == tuple(CLAIM_IDS)


def test_bundles_are_registered():
    assert set(BUNDLES) == {"paper", "extended", "empty"}


def test_empty_bundle_has_no_verdicts():
    rep = verify_bundle("empty")
    assert list(rep.summaries) == []
    assert rep.exit_code == 0


def test_every_claim_appears_once(worked):
    assert [row[0] for row in worked.traceability()] == list(CLAIM_IDS)


def test_example_information_gain_holds(worked):
    assert worked.verdicts()["info.example_zero"] == HOLDS


def test_lenient_scenario_is_stamped(worked):
    assert any("table4" in s for s in worked.lenient_scenarios)


def test_known_counterexamples_fail_with_witnesses(worked):
    # frozen from the run: these three statements break on the worked tables
    failing = {s.claim.claim_id: s for s in worked.summaries if s.verdict == FAILS}
    assert set(failing) == {"algebra.swap_identity", "closure.l_a_maximal", "partition.common_refinement"}
    assert all(s.witness for s in failing.values())
    assert worked.exit_code == 1


def test_refinement_claims_carry_the_reading(worked):
    notes = {row[0]: row[4] for row in worked.traceability()}
    assert notes["partition.common_refinement"] == REFINEMENT_NOTE


def test_report_formats_agree(worked):
    doc = json.loads(worked.to_json())
    rows = list(csv.DictReader(io.StringIO(worked.to_csv())))
    assert [c["claim_id"] for c in doc["claims"]] == [r["claim_id"] for r in rows] == list(CLAIM_IDS)
    text = worked.to_text().splitlines()
    assert text[0] == "bundle: paper"
    assert all(any(line.startswith(cid + " ") for line in text) for cid in CLAIM_IDS)


def test_subset_of_claims():
    rep = verify_bundle("paper", claims=["algebra.tables_validate"])
    assert [s.claim.claim_id for s in rep.summaries] == ["algebra.tables_validate"]
    assert rep.verdicts() == {"algebra.tables_validate": HOLDS}
