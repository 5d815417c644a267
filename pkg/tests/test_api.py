import inspect

import pytest
from httpx import ASGITransport, AsyncClient

from jex import app
from jex.routers import check, derive, normalize, translate

client = AsyncClient(transport=ASGITransport(app=app), base_url="http://test")

OMEGA = r"(\(x:p -> p). x x) (\(x:p -> p). x x)"


class TestRoot:
    @pytest.mark.asyncio
    async def test_redirects_to_docs(self):
        response = await client.get("/")
        assert response.status_code == 307
        assert response.headers["location"] == "/docs"

    @pytest.mark.asyncio
    async def test_builders(self):
        response = await client.get("/builders")
        assert response.status_code == 200
        names = response.json()
        assert "trunc-intro" in names
        assert "prop-1L" in names


class TestCheck:
    @pytest.mark.asyncio
    async def test_ok(self):
        response = await client.post(
            "/check", json={"source": "hyp a : p\ncheck a : p\n"}
        )
        assert response.status_code == 200
        report = response.json()
        assert report["status"] == "ok"
        assert [r["declaration"] for r in report["results"]] == ["hyp", "check"]
        assert report["results"][1]["judgment"] == "(a : p |- a : p)"

    @pytest.mark.asyncio
    async def test_failure_is_reported(self):
        response = await client.post(
            "/check", json={"source": "hyp a : p\ncheck a : q\n"}
        )
        assert response.status_code == 200
        report = response.json()
        assert report["status"] == "fail"
        assert report["results"][1]["line"] == 2

    @pytest.mark.asyncio
    async def test_parse_error(self):
        response = await client.post("/check", json={"source": "hyp a :\n"})
        assert response.status_code == 400
        assert response.json()["detail"].startswith("1:8: ")

    @pytest.mark.asyncio
    async def test_bound_twice(self):
        response = await client.post(
            "/check", json={"source": "hyp a : p\nhyp a : q\n"}
        )
        assert response.status_code == 400
        assert "'a' is already bound" in response.json()["detail"]

    @pytest.mark.asyncio
    async def test_missing_source(self):
        response = await client.post("/check", json={})
        assert response.status_code == 422


class TestNormalize:
    @pytest.mark.asyncio
    async def test_trace(self):
        response = await client.post(
            "/normalize",
            json={
                "expression": r"let [x]j = (\(y:p). [y]) a in x",
                "hypotheses": ["a:p"],
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["normal_form"] == "a"
        assert body["judgment"] == "(a : p |- a : p)"
        assert [s["path"] for s in body["steps"]] == [
            ["CongLetJScrutinee", "BetaArrow"],
            ["BetaExistsJ"],
        ]

    @pytest.mark.asyncio
    async def test_fuel(self):
        response = await client.post(
            "/normalize", json={"expression": OMEGA, "fuel": 3}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "fuel"
        assert body["normal_form"] is None
        assert len(body["steps"]) == 3

    @pytest.mark.asyncio
    async def test_fuel_must_be_positive(self):
        response = await client.post("/normalize", json={"expression": "a", "fuel": 0})
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_parse_error(self):
        response = await client.post("/normalize", json={"expression": "(a"})
        assert response.status_code == 400

    @pytest.mark.asyncio
    async def test_duplicate_hypotheses(self):
        response = await client.post(
            "/normalize", json={"expression": "a", "hypotheses": ["a:p", "a:q"]}
        )
        assert response.status_code == 422


class TestTranslate:
    @pytest.mark.asyncio
    @pytest.mark.parametrize(
        "proposition,direction,expected",
        [
            ("Ex p -> q", "to-lax", "O p => q"),
            ("O p => q", "from-lax", "Ex p -> q"),
        ],
    )
    async def test_translate(self, proposition, direction, expected):
        response = await client.post(
            "/translate", json={"proposition": proposition, "direction": direction}
        )
        assert response.status_code == 200
        assert response.json() == {"proposition": expected}

    @pytest.mark.asyncio
    async def test_unknown_direction(self):
        response = await client.post(
            "/translate", json={"proposition": "p", "direction": "sideways"}
        )
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_parse_error(self):
        response = await client.post(
            "/translate", json={"proposition": "p =>", "direction": "from-lax"}
        )
        assert response.status_code == 400


class TestDerive:
    @pytest.mark.asyncio
    async def test_truncation(self):
        response = await client.post(
            "/derive",
            json={
                "builder": "trunc-intro",
                "arguments": ["a"],
                "hypotheses": ["a:p"],
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["expression"] == "[a]"
        assert body["judgment"] == "(a : p |- [a] : Ex p)"
        assert body["derivation"].startswith("(ExI ")
        assert body["open_premises"] == []

    @pytest.mark.asyncio
    async def test_proof_tree(self):
        response = await client.post(
            "/derive", json={"builder": "prop-1L", "arguments": ["p", "q"]}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["expression"] is None
        assert body["judgment"] == "(|- p -> q just)"
        assert body["open_premises"] == ["(|- p -> Ex q true)"]

    @pytest.mark.asyncio
    async def test_unknown_builder(self):
        response = await client.post(
            "/derive", json={"builder": "prop-7", "arguments": ["p"]}
        )
        assert response.status_code == 404
        assert response.json()["detail"] == "unknown builder"

    @pytest.mark.asyncio
    async def test_ill_typed_argument(self):
        response = await client.post(
            "/derive",
            json={
                "builder": "trunc-elim",
                "arguments": ["a"],
                "hypotheses": ["a:p"],
            },
        )
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_wrong_arity(self):
        response = await client.post(
            "/derive", json={"builder": "trunc-intro", "arguments": []}
        )
        assert response.status_code == 422
        assert response.json()["detail"] == "trunc-intro takes one expression"

    @pytest.mark.asyncio
    async def test_parse_error(self):
        response = await client.post(
            "/derive", json={"builder": "prop-1L", "arguments": ["p ->", "q"]}
        )
        assert response.status_code == 400


class TestEndpoints:
    @pytest.mark.parametrize(
        "endpoint",
        [check.check, derive.derive, normalize.normalize, translate.translate],
    )
    def test_kernel_calls_run_in_the_threadpool(self, endpoint):
        assert not inspect.iscoroutinefunction(endpoint)
