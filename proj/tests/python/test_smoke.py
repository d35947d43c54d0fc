"""End-to-end smoke checks for the Python surface of the pipeline."""

import json
import math
from pathlib import Path

import pytest

import pedant

REPO_ROOT = Path(__file__).resolve().parents[2]
TOY_CONFIG = REPO_ROOT / "configs" / "toy.json"


def test_clean_text_strips_links_and_collapses_whitespace():
    raw = "Visit https://example.com/x right\t\tnow please"
    cleaned = pedant.clean_text(raw)
    assert "https" not in cleaned
    assert "  " not in cleaned
    assert cleaned == pedant.clean_text(cleaned)


def test_segment_sentences():
    parts = pedant.segment_sentences("One here. Two there! A third?")
    assert parts == ["One here.", "Two there!", "A third?"]


def test_cosine_conventions():
    assert pedant.cosine([1.0, 0.0], [2.0, 0.0]) == pytest.approx(1.0)
    assert pedant.cosine([1.0, 0.0], [0.0, 3.0]) == pytest.approx(0.0)
    assert pedant.cosine([0.0, 0.0], [1.0, 1.0]) == 0.0


def test_metrics_from_confusion_hand_case():
    metrics = pedant.metrics_from_confusion(1, 0, 1, 2)
    assert metrics["precision"] == pytest.approx(1.0)
    assert metrics["recall"] == pytest.approx(0.5)
    assert metrics["f1"] == pytest.approx(2.0 / 3.0)
    assert metrics["macro_f1"] == pytest.approx(11.0 / 15.0)


def test_filter_texts_accounting():
    texts = [
        "the monster waits in the dark cellar",
        "THE MONSTER WAITS IN THE DARK CELLAR",
        "too short",
        "what a lovely wonderful happy day",
        "my enemies will regret crossing me eventually",
    ]
    out = pedant.filter_texts(texts, min_words=3)
    removed = sum(out["removed_by_rule"].values())
    assert removed + len(out["survivors"]) == len(texts)
    assert set(out["removed_by_rule"]) == {f"rule{i}" for i in range(1, 7)}
    assert out["removed_by_rule"]["rule2"] >= 1  # the shouted duplicate
    # kept_indices point back into the input, in order
    assert out["kept_indices"] == sorted(out["kept_indices"])
    for text, index in zip(out["survivors"], out["kept_indices"]):
        assert texts[index] == text


def test_score_texts_shape_and_determinism():
    texts = ["a cruel and violent streak", "picked up groceries today"]
    first = pedant.score_texts(texts)
    second = pedant.score_texts(texts)
    assert first == second
    assert len(first) == 2
    assert all(-1.0 <= s <= 1.0 and math.isfinite(s) for s in first)


def test_paraphrase_keep_indices_drops_exact_repeat():
    kept = pedant.paraphrase_keep_indices(
        ["wolves circle the camp", "wolves circle the camp", "quiet morning coffee"]
    )
    assert kept == [0, 2]


def test_default_seeds_and_lexicon():
    seeds = pedant.default_seeds()
    assert len(seeds) == 40
    assert [s["seed_id"] for s in seeds] == list(range(40))
    assert {s["category"] for s in seeds} == {"SELF", "OTHERS"}
    assert all(s["text"] for s in seeds)
    assert len(pedant.default_lexicon_words()) == 28


def test_run_toy_pipeline(tmp_path):
    result = pedant.run(str(TOY_CONFIG), out=str(tmp_path))
    run_dir = Path(result["run_dir"])
    assert run_dir.exists()
    assert set(result["stages"]) == {
        "ingest",
        "finetune",
        "generate",
        "filter",
        "rank",
        "assemble",
        "evaluate",
    }
    assert len(result["config_hash"]) == 16

    dataset_path = run_dir / "dataset" / "dataset.jsonl"
    assert dataset_path.exists()
    rows = [json.loads(line) for line in dataset_path.read_text().splitlines()]
    assert rows and all({"text", "label"} <= set(row) for row in rows)

    manifest = json.loads((run_dir / "manifest.json").read_text())
    assert manifest["config_hash"] == result["config_hash"]
    assert set(manifest["stages"]) == set(result["stages"])


def test_bad_config_raises_value_error(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ValueError):
        pedant.run(str(broken))

    unknown_key = tmp_path / "unknown.json"
    unknown_key.write_text(json.dumps({"variant": "dexter", "bogus": 1}))
    with pytest.raises(ValueError):
        pedant.run(str(unknown_key), out=str(tmp_path / "out"))
