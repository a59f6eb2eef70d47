"""Smoke test for the webca extension module."""

import webca


def main():
    rows = webca.evolve_additive("1or3", "1", 4, -4, 9)
    assert rows[0] == "000010000"
    assert rows[1] == "000111000"

    link = webca.compute_link("110100111", 2)
    assert link.equivalent(webca.Link("010110101111")), str(link)
    assert not webca.Link("101000").is_blocker("diagonal", 2)
    assert webca.Link("111111").is_nondegenerate(5)

    ext = webca.WebRule("extended_1or3")
    assert "free4" in ext.compliance()
    e = webca.produce_ether(ext, "(02)*", 100)
    assert (e["signature"], e["sigma"], e["tau"]) == ("02", 2, 1)

    pig = webca.WebRule("piggyback")
    assert webca.reflection_class(pig, "[4]2022")["class"] == "pair_with"

    xor = webca.WebRule("web_xor")
    cert = webca.replication_certificate(xor, "1101001110010111", None, 4)
    assert cert["status"] in ("certified", "not certified")
    rep = webca.verify_replicator(xor, "1101001", 3, "0", 64)
    assert rep["ok"]

    c = webca.run_census(ext, 2, "free4")
    assert 4 * c["N_n"] == 3 * c["total_image"] == 3 * 256
    assert c["bounds"]["rows"]

    mc = webca.mc_crossing("wide", 4, 200, 1)
    assert 0.0 <= mc["estimate"] <= 1.0
    try:
        webca.WebRule("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown rule accepted")
    print("python smoke test ok")


if __name__ == "__main__":
    main()
