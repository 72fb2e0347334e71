import json

import httpx
import pytest
from fastapi.testclient import TestClient
from jsonschema import validate

import schemas
from conftest import JAGUAR_CONTEXT
from wsdkit import wsd
from wsdkit.errors import ConfigError, ModelFormatError
from wsdkit.model import MODEL_KINDS
from wsdkit.service import (
    ApiConfig,
    ExternalProvider,
    StaticMapProvider,
    create_app,
    load_service_config,
    serialize_prediction,
)
from wsdkit.store import load_manifest, load_model


class CountingTransport(httpx.MockTransport):
    def __init__(self, handler):
        super().__init__(handler)
        self.calls = 0

    def handle_request(self, request):
        self.calls += 1
        return super().handle_request(request)


def _hit_handler(request):
    return httpx.Response(200, json={"hits": [{"url": "http://img/jaguar-animal.png"}]})


@pytest.fixture
def client(tiny_model_dir):
    config = ApiConfig(models={"default": tiny_model_dir})
    app = create_app(config)
    return TestClient(app)


class TestModels:
    def test_four_logical_models(self, client, tiny_model_dir):
        resp = client.get("/api/models")
        assert resp.status_code == 200
        body = resp.json()
        validate(body, schemas.MODELS_RESPONSE)
        assert sorted(m["model_id"] for m in body["models"]) == sorted(MODEL_KINDS)

    def test_counts_match_manifest(self, client, tiny_model_dir):
        manifest = load_manifest(tiny_model_dir)
        for m in client.get("/api/models").json()["models"]:
            for key, value in m["counts"].items():
                assert str(value) == manifest[f"count.{key}"]

    def test_no_models_refuses_to_start(self):
        with pytest.raises(ConfigError):
            create_app(ApiConfig(models={}))

    def test_invalid_model_dir_fails_fast(self, tmp_path):
        bad = tmp_path / "bad"
        bad.mkdir()
        with pytest.raises(ModelFormatError):
            create_app(ApiConfig(models={"default": bad}))


class TestInventory:
    def test_known_word_payload(self, client, tiny_model_dir):
        resp = client.get("/api/inventory/words-context/jaguar")
        assert resp.status_code == 200
        body = resp.json()
        validate(body, schemas.INVENTORY_RESPONSE)
        model = load_model(tiny_model_dir)
        senses = model.lookup_word("jaguar")
        assert len(body["senses"]) == len(senses)
        for card, entry in zip(body["senses"], senses):
            assert card["sense_id"] == entry.sense_id
            assert card["label"] == entry.hypernyms.top()
            assert card["hypernyms"] == [
                {"word": w, "score": s} for w, s in entry.hypernyms
            ]
            assert card["members"] == [
                {"word": m, "weight": w} for m, w in entry.members
            ]
            assert card["examples"] == [
                {"sentence": t, "confidence": c} for t, c in entry.examples
            ]
            assert card["context_clues"] == [
                {"feature": f, "weight": w}
                for f, w in entry.context_vec.sorted_by_weight()[:10]
            ]
            assert card["image_url"] is None

    def test_unknown_word_404(self, client):
        resp = client.get("/api/inventory/words-context/zebra")
        assert resp.status_code == 404
        validate(resp.json(), schemas.ERROR_RESPONSE)

    def test_unknown_model_404(self, client):
        resp = client.get("/api/inventory/bogus-model/jaguar")
        assert resp.status_code == 404
        validate(resp.json(), schemas.ERROR_RESPONSE)

    def test_super_inventory_lists_classes(self, client):
        body = client.get("/api/inventory/super-cluster/jaguar").json()
        validate(body, schemas.INVENTORY_RESPONSE)
        assert {card["sense_id"] for card in body["senses"]} == {0, 1}
        assert all(card["inventory"] == "super" for card in body["senses"])


class TestPredict:
    def test_fixture_prediction(self, client):
        resp = client.post(
            "/api/predict",
            json={"word": "Jaguar", "context": JAGUAR_CONTEXT, "model": "words-cluster"},
        )
        assert resp.status_code == 200
        body = resp.json()
        validate(body, schemas.PREDICTION)
        top = body["ranked"][0]["sense"]
        assert top["sense_id"] == 0 and top["label"] == "animal"

    def test_field_equals_library_prediction(self, client, tiny_model_dir):
        resp = client.post(
            "/api/predict",
            json={"word": "jaguar", "context": JAGUAR_CONTEXT, "model": "words-context"},
        )
        model = load_model(tiny_model_dir)
        pred = wsd.disambiguate("jaguar", JAGUAR_CONTEXT, "words-context", model)
        expected = serialize_prediction(pred, provider=_NullProvider())
        expected["model_id"] = "words-context"
        assert resp.json() == json.loads(json.dumps(expected))

    def test_empty_context_422(self, client):
        resp = client.post(
            "/api/predict", json={"word": "jaguar", "context": "   ", "model": "words-context"}
        )
        assert resp.status_code == 422
        validate(resp.json(), schemas.ERROR_RESPONSE)

    def test_missing_fields_400(self, client):
        resp = client.post("/api/predict", json={"context": "x", "model": "words-context"})
        assert resp.status_code == 400
        resp = client.post("/api/predict", json={"word": "jaguar", "model": "words-context"})
        assert resp.status_code == 400

    def test_unknown_model_404(self, client):
        resp = client.post(
            "/api/predict", json={"word": "jaguar", "context": "x", "model": "nope"}
        )
        assert resp.status_code == 404

    def test_unknown_word_404(self, client):
        resp = client.post(
            "/api/predict", json={"word": "zebra", "context": "x", "model": "words-context"}
        )
        assert resp.status_code == 404

    def test_unknown_request_fields_ignored(self, client):
        resp = client.post(
            "/api/predict",
            json={
                "word": "jaguar",
                "context": JAGUAR_CONTEXT,
                "model": "words-context",
                "debug": True,
            },
        )
        assert resp.status_code == 200


class TestPredictAll:
    def test_two_targets_with_spans(self, client):
        text = "The jaguar chased a leopard."
        resp = client.post("/api/predict-all", json={"text": text, "model": "words-context"})
        assert resp.status_code == 200
        body = resp.json()
        validate(body, schemas.PREDICT_ALL_RESPONSE)
        assert [a["word"] for a in body["annotations"]] == ["jaguar", "leopard"]
        for ann in body["annotations"]:
            assert body["text"][ann["begin"] : ann["end"]].lower() == ann["word"]

    def test_empty_text_empty_annotations(self, client):
        body = client.post(
            "/api/predict-all", json={"text": "", "model": "words-context"}
        ).json()
        assert body["annotations"] == [] and body["tokens"] == []

    def test_missing_text_400(self, client):
        assert (
            client.post("/api/predict-all", json={"model": "words-context"}).status_code
            == 400
        )

    def test_annotations_equal_single_word_predictions(self, client):
        text = "The jaguar chased a leopard."
        body = client.post(
            "/api/predict-all", json={"text": text, "model": "words-context"}
        ).json()
        for ann in body["annotations"]:
            single = client.post(
                "/api/predict",
                json={"word": ann["word"], "context": text, "model": "words-context"},
            ).json()
            assert [r["sense"]["sense_id"] for r in ann["prediction"]["ranked"]] == [
                r["sense"]["sense_id"] for r in single["ranked"]
            ]

    def test_token_index_aligns(self, client):
        text = "A leopard is spotted. The jaguar is fast."
        body = client.post(
            "/api/predict-all", json={"text": text, "model": "words-context"}
        ).json()
        for ann in body["annotations"]:
            tok = body["tokens"][ann["token_index"]]
            assert tok["norm"] == ann["word"]
            assert (tok["begin"], tok["end"]) == (ann["begin"], ann["end"])


class TestTrace:
    def test_trace_mirrors_library(self, client, tiny_model_dir):
        resp = client.get(
            "/api/trace/words-context/jaguar/0", params={"feature": "predator"}
        )
        assert resp.status_code == 200
        body = resp.json()
        validate(body, schemas.TRACE_RESPONSE)
        model = load_model(tiny_model_dir)
        expected = wsd.trace_feature(model.lookup_sense("jaguar", 0), "predator", model)
        assert body["members"] == [{"word": m, "weight": w} for m, w in expected]

    def test_absent_feature_empty(self, client):
        body = client.get(
            "/api/trace/words-context/jaguar/0", params={"feature": "zzz"}
        ).json()
        assert body["members"] == []

    def test_unknown_sense_404(self, client):
        resp = client.get(
            "/api/trace/words-context/jaguar/9", params={"feature": "predator"}
        )
        assert resp.status_code == 404
        validate(resp.json(), schemas.ERROR_RESPONSE)

    def test_super_trace_uses_class(self, client):
        resp = client.get("/api/trace/super-cluster/-/0", params={"feature": "predator"})
        assert resp.status_code == 200
        assert {m["word"] for m in resp.json()["members"]} == {"jaguar", "leopard"}


class _NullProvider:
    def get(self, word, hypernym):
        return None


class TestImage:
    def test_none_provider_null_and_zero_network(self, tiny_model_dir):
        transport = CountingTransport(_hit_handler)
        config = ApiConfig(models={"default": tiny_model_dir}, image_provider="none")
        app = create_app(config, http_client=httpx.Client(transport=transport))
        client = TestClient(app)
        resp = client.get("/api/image", params={"word": "jaguar", "hypernym": "animal"})
        assert resp.status_code == 200
        validate(resp.json(), schemas.IMAGE_RESPONSE)
        assert resp.json() == {"url": None}
        client.post(
            "/api/predict",
            json={"word": "jaguar", "context": JAGUAR_CONTEXT, "model": "words-context"},
        )
        assert transport.calls == 0

    def test_static_map(self, tiny_model_dir, tmp_path):
        map_file = tmp_path / "map.tsv"
        map_file.write_text("jaguar animal\thttp://img/a.png\n", "utf-8")
        config = ApiConfig(
            models={"default": tiny_model_dir},
            image_provider="static-map",
            image_map=map_file,
        )
        client = TestClient(create_app(config))
        assert client.get(
            "/api/image", params={"word": "jaguar", "hypernym": "animal"}
        ).json() == {"url": "http://img/a.png"}
        assert client.get(
            "/api/image", params={"word": "jaguar", "hypernym": "car"}
        ).json() == {"url": None}

    def test_external_provider_caches(self, tiny_model_dir):
        transport = CountingTransport(_hit_handler)
        config = ApiConfig(
            models={"default": tiny_model_dir},
            image_provider="external",
            image_endpoint="http://search.example/api",
        )
        app = create_app(config, http_client=httpx.Client(transport=transport))
        client = TestClient(app)
        for _ in range(2):
            resp = client.get("/api/image", params={"word": "jaguar", "hypernym": "animal"})
            assert resp.json() == {"url": "http://img/jaguar-animal.png"}
        assert transport.calls == 1  # second call served from cache

    def test_external_failure_yields_null_not_5xx(self, tiny_model_dir):
        def boom(request):
            raise httpx.ConnectTimeout("no route")

        config = ApiConfig(
            models={"default": tiny_model_dir},
            image_provider="external",
            image_endpoint="http://search.example/api",
        )
        app = create_app(config, http_client=httpx.Client(transport=httpx.MockTransport(boom)))
        client = TestClient(app)
        resp = client.get("/api/image", params={"word": "jaguar", "hypernym": "animal"})
        assert resp.status_code == 200 and resp.json() == {"url": None}


class TestProviders:
    def test_static_map_provider_direct(self, tmp_path):
        f = tmp_path / "map.tsv"
        f.write_text("# comment\njaguar animal\thttp://x\n", "utf-8")
        provider = StaticMapProvider(f)
        assert provider.get("jaguar", "animal") == "http://x"
        assert provider.get("jaguar", None) is None

    def test_external_provider_no_hits(self):
        transport = httpx.MockTransport(lambda req: httpx.Response(200, json={"hits": []}))
        provider = ExternalProvider("http://s/api", client=httpx.Client(transport=transport))
        assert provider.get("a", "b") is None

    def test_external_provider_sends_query_and_key(self):
        seen = {}

        def capture(request):
            seen["url"] = str(request.url)
            return _hit_handler(request)

        provider = ExternalProvider(
            "http://s/api", key="K", client=httpx.Client(transport=httpx.MockTransport(capture))
        )
        provider.get("jaguar", "animal")
        assert "q=jaguar+animal" in seen["url"] and "key=K" in seen["url"]


class TestServiceConfig:
    def test_load_config_file(self, tmp_path, tiny_model_dir):
        f = tmp_path / "service.conf"
        f.write_text(
            f"host\t0.0.0.0\nport\t9001\nmodel\t{tiny_model_dir}\n"
            "image_provider\tnone\ncors\thttp://localhost:5173\n",
            "utf-8",
        )
        config = load_service_config(f)
        assert config.port == 9001
        assert config.models == {"default": tiny_model_dir}
        assert config.cors == ["http://localhost:5173"]

    def test_env_overrides(self, tmp_path, tiny_model_dir, monkeypatch):
        f = tmp_path / "service.conf"
        f.write_text(f"port\t9001\nmodel\t{tmp_path}\n", "utf-8")
        monkeypatch.setenv("WSDKIT_PORT", "9002")
        monkeypatch.setenv("WSDKIT_MODEL", str(tiny_model_dir))
        config = load_service_config(f)
        assert config.port == 9002
        assert config.models == {"default": tiny_model_dir}

    def test_unknown_key_rejected(self, tmp_path):
        f = tmp_path / "service.conf"
        f.write_text("bogus\tvalue\n", "utf-8")
        with pytest.raises(ConfigError, match="bogus"):
            load_service_config(f)

    def test_external_requires_endpoint(self, tiny_model_dir):
        config = ApiConfig(models={"default": tiny_model_dir}, image_provider="external")
        with pytest.raises(ConfigError, match="image_endpoint"):
            create_app(config)
