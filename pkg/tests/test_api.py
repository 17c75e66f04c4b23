from app.core.kcoef import COMMUTATOR_FACTOR, ONE, Q


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_enk(client):
    response = client.get("/api/v1/hall/enk", params={"n": 5, "k": 2})
    assert response.status_code == 200
    assert response.json() == {"word": [0, 0, 1, 0, 1], "prefactor": "1"}


def test_enk_bad_input(client):
    response = client.get("/api/v1/hall/enk", params={"n": 0, "k": 2})
    assert response.status_code == 400


def test_mul(client):
    response = client.get("/api/v1/hall/mul", params={"a": "0", "b": "1"})
    assert response.status_code == 200
    assert response.json()["terms"] == [
        {"word": [-1, 2], "coef": "-q1*q2"},
        {"word": [0, 1], "coef": "1"},
    ]


def test_mul_malformed_word(client):
    response = client.get("/api/v1/hall/mul", params={"a": "0,x", "b": "1"})
    assert response.status_code == 400


def test_bracket_in_opposite_half(client):
    response = client.get("/api/v1/hall/bracket", params={"word": "-1", "k": 1, "half": "F"})
    assert response.status_code == 200
    assert response.json()["terms"] == [
        {"word": [-1, 1], "coef": "-1"},
        {"word": [0, 0], "coef": "-1"},
    ]


def test_gary(client):
    response = client.get("/api/v1/hall/gary")
    assert response.status_code == 200
    payload = response.json()
    assert payload["verdict"] == "verified"
    assert payload["result"]["terms"] == [{"word": [0, 0, 1, 0, 1], "coef": "1"}]


def test_serre(client):
    response = client.get("/api/v1/hall/serre", params={"k": -2})
    assert response.json() == {"k": -2, "verdict": "verified"}


def test_empty_triangle(client):
    response = client.get("/api/v1/hall/empty-triangle", params={"u": "(-1,1)", "v": "(-1,0)"})
    assert response.status_code == 200
    payload = response.json()
    assert (payload["u"], payload["v"], payload["verdict"]) == ("(-1,0)", "(-1,1)", "verified")


def test_empty_triangle_rejects_large_triangle(client):
    response = client.get("/api/v1/hall/empty-triangle", params={"u": "(-2,0)", "v": "(-1,1)"})
    assert response.status_code == 400


def test_straighten(client):
    response = client.get("/api/v1/hall/straighten", params={"path": "(-1,1);(-1,0)"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["verdict"] == "verified"
    assert {"path": "(-1,0);(-1,1)", "coef": "1"} in payload["terms"]


def test_straighten_window_too_small(client):
    response = client.get("/api/v1/hall/straighten", params={"path": "(-1,1);(-1,0)", "window": "1,0,1"})
    assert response.status_code == 400


def test_h_series(client):
    response = client.get("/api/v1/cartan/h", params={"sign": "+", "length": 1})
    assert response.status_code == 200
    first = response.json()["coefficients"][1]["terms"]
    assert first == [{"monomial": [{"symbol": "E0[1]", "power": 1}], "coef": str(1 - ONE / Q)}]


def test_plethystic(client):
    response = client.get("/api/v1/cartan/plethystic", params={"ray": "(1,1)", "length": 2})
    assert response.status_code == 200
    payload = response.json()
    assert payload["direction"] == "p_from_e"
    assert payload["coefficients"][0]["terms"] == [
        {"monomial": [{"symbol": "E[1,1]", "power": 1}], "coef": "1"}
    ]


def test_heisenberg(client):
    response = client.get("/api/v1/cartan/heisenberg", params={"u": "(1,1)", "v": "(-1,-1)", "r": 1})
    assert response.status_code == 200
    assert response.json()["value"]["terms"] == [{"monomial": [], "coef": str(-COMMUTATOR_FACTOR)}]


def test_heisenberg_non_collinear(client):
    response = client.get("/api/v1/cartan/heisenberg", params={"u": "(1,1)", "v": "(1,0)"})
    assert response.status_code == 400


def test_ef_bracket_specialized(client):
    response = client.get("/api/v1/cartan/ef-bracket", params={"k": 1, "l": -1, "r": 0})
    assert response.status_code == 200
    assert response.json()["value"]["terms"] == []


def test_count(client):
    response = client.get("/api/v1/quot/count", params={"family": "comm", "n": 3, "q": [2, 3]})
    assert response.status_code == 200
    counts = [(row["q"], row["count"]) for row in response.json()]
    assert counts == [(2, "40"), (3, "297")]


def test_count_uses_lambda_key(client):
    response = client.get("/api/v1/quot/count", params={"family": "locus_L", "n": 2, "lam": 1, "q": 2})
    assert response.status_code == 200
    assert response.json()[0]["lambda"] == 1


def test_count_missing_parameter(client):
    response = client.get("/api/v1/quot/count", params={"family": "quot", "d": 2, "q": 2})
    assert response.status_code == 400


def test_count_export(client):
    response = client.get("/api/v1/quot/count/export", params={"family": "comm", "n": 3, "q": 2})
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("text/csv")
    assert response.text.splitlines()[1] == "comm,3,,,,,2,40,,40"


def test_comm4_components(client):
    response = client.get("/api/v1/quot/comm4-components", params={"q": 2})
    payload = response.json()
    assert payload["z1"] + payload["z2_open"] == payload["total"]


def test_fit(client):
    response = client.get(
        "/api/v1/quot/fit", params={"family": "quot", "d": 2, "r": 1, "qs": [2, 3, 5], "holdout": 7}
    )
    assert response.status_code == 200
    fit = response.json()["fit"]
    assert (fit["coeffs"], fit["degree"], fit["holdout_ok"]) == (["1", "1"], 1, True)


def test_fiber_check(client):
    response = client.get("/api/v1/quot/fiber-check", params={"d": 0, "n": 1, "r": 2, "qs": [2, 3, 5]})
    assert response.status_code == 200
    assert response.json()["status"] == "confirmed"
