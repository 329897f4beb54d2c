# Copyright 2026 The kgenrich Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Smoke tests for the Python bindings."""

import json
import os
import pathlib
import random

import pytest

import kgenrich

DATA_DIR = pathlib.Path(
    os.environ.get(
        "KGENRICH_TEST_DATA_DIR", pathlib.Path(__file__).resolve().parents[1] / "data"
    )
)


def brute_h_index(citations):
    return max([h for h in range(len(citations) + 1) if sum(c >= h for c in citations) >= h])


def test_h_index_examples():
    assert kgenrich.h_index([10, 8, 5, 4, 3]) == 4
    assert kgenrich.h_index([25, 8, 5, 3, 3]) == 3
    assert kgenrich.h_index([]) == 0
    assert kgenrich.h_index([0, 0, 0]) == 0


def test_h_index_methods_agree():
    rng = random.Random(5)
    for _ in range(500):
        c = [rng.randint(0, 60) for _ in range(rng.randint(0, 40))]
        expected = brute_h_index(c)
        assert kgenrich.h_index_sorted(c) == expected
        assert kgenrich.h_index_definition(c) == expected
        assert kgenrich.h_index_counting(c) == expected


def test_negative_citations_raise():
    with pytest.raises(kgenrich.InputError):
        kgenrich.h_index([3, -1])


def test_text_processing():
    assert kgenrich.clean_markup("<p>Heat &amp; mass</p>").strip() == "Heat & mass"
    tokens, types = kgenrich.tokenize("The cat saw the dog.")
    assert tokens["the"] == 2
    assert types == sorted(types)
    assert set(types) == set(tokens)


def test_language_detector():
    detector = kgenrich.LanguageDetector()
    assert "en" in kgenrich.LanguageDetector.bundled_languages()
    assert detector.detect("The results suggest that the treatment reduces the risk of infection.") == "en"
    assert detector.detect("Die Ergebnisse deuten darauf hin, dass die Behandlung das Risiko senkt.") == "de"
    assert detector.detect("") == "und"
    assert detector.detect("Hi.") == "und"


def test_process_abstract_keys():
    record = kgenrich.process_abstract("P1", "<i>Cells</i> divide and cells grow in the warm culture medium.")
    assert list(record) == ["paper_id", "language", "text", "tokens", "types"]
    assert record["tokens"]["cells"] == 2


def test_gazetteer_nearest_matches_linear_scan():
    rng = random.Random(9)
    rows = [
        (f"C{i}", rng.uniform(-80, 80), rng.uniform(-180, 180), "FR", "", rng.randint(0, 10**6))
        for i in range(300)
    ]
    gazetteer = kgenrich.Gazetteer(rows)
    assert len(gazetteer) == 300
    for _ in range(50):
        lat, lon = rng.uniform(-90, 90), rng.uniform(-180, 180)
        name, country, distance, _ = gazetteer.nearest(lat, lon)
        best = min(kgenrich.haversine_km(lat, lon, r[1], r[2]) for r in rows)
        assert distance == pytest.approx(best, abs=1e-9)
        assert country == "FR"


def test_gazetteer_rejects_bad_coordinates():
    gazetteer = kgenrich.Gazetteer([("Paris", 48.8566, 2.3522, "FR", "", 2_000_000)])
    with pytest.raises(kgenrich.InputError):
        gazetteer.nearest(91.0, 0.0)


def test_countries():
    assert kgenrich.normalize_country("France") == "FR"
    assert kgenrich.normalize_country("United States of America") == "US"
    assert kgenrich.normalize_country("Atlantis") is None
    assert kgenrich.secondary_country("PR") == "US"
    assert kgenrich.secondary_country("FR") is None


def test_propagate_labels_example():
    nodes = [("A", 0), ("B", 0), ("C", 1), ("D", 1), ("E", 2)]
    links = [("A", "C"), ("B", "C"), ("A", "D"), ("C", "E"), ("D", "E")]
    labels = kgenrich.propagate_labels(nodes, links)
    assert labels["E"] == {"A": 0.75, "B": 0.25}
    assert labels["A"] == {"A": 1.0}
    for scores in labels.values():
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)


def test_ego_networks_symmetric():
    triples = [("P1", "a", None, 2000), ("P1", "b", None, 2000), ("P1", "c", None, 2000),
               ("P2", "a", None, 2000), ("P2", "b", None, 2000)]
    nets = {(ego, year): alters for ego, year, alters in kgenrich.ego_networks(triples)}
    assert nets[("a", 2000)] == {"b": 2, "c": 1}
    for (ego, year), alters in nets.items():
        for alter, weight in alters.items():
            assert nets[(alter, year)][ego] == weight


def test_mobility_functions():
    triples = [("P1", "A1", "F1", 2000), ("P2", "A1", "F2", 2001)]
    geo = {"F1": "FR", "F2": "US"}
    (record,) = kgenrich.author_mobility(triples, geo)
    assert record["locations"] == {2000: "FR", 2001: "US"}
    flows = kgenrich.flows(triples, geo)
    assert [(f[0], f[1], f[2], f[3]) for f in flows] == [(2001, "FR", "US", 1)]
    for country, year, stock, located, natives, stateless in kgenrich.stocks(triples, geo):
        assert stock + natives + stateless == located


def test_run_fixture(tmp_path):
    report = kgenrich.run("all", DATA_DIR / "fixture" / "manifest.txt", tmp_path)
    assert report["subcommand"] == "all"
    for name in report["outputs"]:
        assert (tmp_path / name).read_bytes() == (DATA_DIR / "golden" / name).read_bytes()
    for line in (tmp_path / "AbstractsProcessed.jsonl").read_text().splitlines():
        json.loads(line)


def test_run_unknown_stage(tmp_path):
    with pytest.raises(kgenrich.InputError):
        kgenrich.run("no-such-stage", DATA_DIR / "fixture" / "manifest.txt", tmp_path)
