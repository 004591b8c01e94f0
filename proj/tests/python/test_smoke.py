import math
import os
from pathlib import Path

import pytest

import kwassign as kw

DATA = Path(os.environ.get("KWASSIGN_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))
MINI = DATA / "mini_thesaurus.tsv"


def test_textpipe():
    assert kw.fold_case("PESCA Ñandú") == "pesca ñandú"
    assert kw.tokenize("La pesca, del buque.") == ["la", "pesca", "del", "buque"]
    marked = kw.mark_multiwords("the nuclear power plant", ["nuclear power plant"])
    assert "nuclear_power_plant" in marked

    pipe = kw.Pipeline(lemmas={"buques": "buque"}, stopwords=["la", "de", "los"])
    table = pipe.process("La pesca de los buques. Buques y pesca.")
    assert table.count("buque") == 2
    assert table.count("la") == 0
    assert table.total == len(table.to_dict()) + 2


def test_keyness():
    assert kw.log_likelihood(10, 100, 10, 100) == 0.0
    g2 = kw.log_likelihood(doc_count=50, doc_total=1000, ref_count=60, ref_total=100000)
    assert g2 > 0
    assert kw.chi_square(50, 1000, 60, 100000) > 0

    doc = kw.FrequencyTable({"pesca": 8, "año": 2})
    ref = kw.FrequencyTable({"pesca": 10, "año": 200, "nuclear": 90})
    words = kw.extract_keywords(doc, ref)
    assert [w.lemma for w in words] == ["pesca"]


def test_thesaurus_and_errors():
    t = kw.load_thesaurus(str(MINI))
    assert len(t) == 6
    assert t.label("T100", "es") == "GESTIÓN DE LA PESCA"
    assert t.neighbors("T200") == {"T201", "T202", "T300"}
    with pytest.raises(kw.KwassignError):
        t.label("NOPE", "en")


def test_assign_similarity_evaluate(tmp_path):
    manifest = []
    for i in range(3):
        (tmp_path / f"f{i}.txt").write_text("pesca buque mar cuota informe año", encoding="utf-8")
        (tmp_path / f"n{i}.txt").write_text("nuclear reactor seguridad central informe año",
                                           encoding="utf-8")
        manifest.append(f"f{i}\tes\t-\tf{i}.txt\tT100")
        manifest.append(f"n{i}\tes\t-\tn{i}.txt\tT300")
    (tmp_path / "train.manifest").write_text("\n".join(manifest) + "\n", encoding="utf-8")

    t = kw.load_thesaurus(str(MINI))
    store, report = kw.train_from_manifest(str(tmp_path / "train.manifest"), t, min_tokens=5)
    assert len(store) == 2
    assert "2 of 6" in report.summary()

    kw.save_store(store, str(tmp_path / "store"))
    loaded = kw.load_store(str(tmp_path / "store"))
    assert loaded == store

    doc = kw.Pipeline().process("la pesca y el buque")
    a = kw.assign("new", doc, loaded, "es")
    assert a.descriptor_ids()[0] == "T100"
    rows = kw.display(a, t, "en")
    assert rows[0][3] == "FISHERY MANAGEMENT"
    assert kw.similarity(a, a, k=5) == 1.0

    results = kw.evaluate([("d", a.descriptor_ids(), {"T201"}), ("e", ["T300"], {"T300"})],
                          thesaurus=t, ranks=[1], mode="relaxed")
    assert results == [(1, 0.5, 0.5)]


def test_baseline_and_cli():
    assert math.isclose(kw.random_baseline(6252), 1 / 6252)
    assert kw.format_percent(1 / 6252, 3) == "0.016%"
    code, out, _ = kw.run_cli(["validate-thesaurus", str(MINI)])
    assert code == 0
    assert "descriptors\t6" in out
    assert kw.run_cli([])[0] == 2
