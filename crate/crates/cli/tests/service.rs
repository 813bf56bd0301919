use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use whskit_cli::service::{self, AppState};

struct Client {
    app: axum::Router,
}

impl Client {
    fn new(state: AppState) -> Self {
        Client {
            app: service::router(Arc::new(state)),
        }
    }

    fn fresh() -> Self {
        Self::new(AppState::new(None).unwrap())
    }

    async fn call(&self, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Vec<u8>) {
        let req = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
            .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        (
            status,
            resp.into_body()
                .collect()
                .await
                .unwrap()
                .to_bytes()
                .to_vec(),
        )
    }

    async fn json(&self, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
        let (s, b) = self.call(method, uri, body).await;
        (s, serde_json::from_slice(&b).unwrap_or(Value::Null))
    }

    async fn create(&self, body: &str) -> String {
        let (s, v) = self.json("POST", "/api/session", Some(body)).await;
        assert_eq!(s, StatusCode::CREATED, "{v}");
        v["id"].as_str().unwrap().to_string()
    }

    async fn mutate(&self, id: &str, k: usize) -> (StatusCode, Value) {
        let body = json!({ "vertex": k }).to_string();
        self.json("POST", &format!("/api/session/{id}/mutate"), Some(&body))
            .await
    }

    async fn state(&self, id: &str) -> Vec<u8> {
        let (s, b) = self.call("GET", &format!("/api/session/{id}"), None).await;
        assert_eq!(s, StatusCode::OK);
        b
    }
}

fn sorted(v: &Value) -> Vec<String> {
    let mut out: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().into())
        .collect();
    out.sort();
    out
}

#[tokio::test]
async fn pentagon_returns_up_to_swap() {
    let c = Client::fresh();
    let id = c.create(r#"{"type":"A2"}"#).await;
    let start: Value = serde_json::from_slice(&c.state(&id).await).unwrap();
    assert_eq!(start["variables"], json!(["x1", "x2"]));
    let mut seen = std::collections::BTreeSet::new();
    let mut last = Value::Null;
    for k in [0, 1, 0, 1, 0] {
        let (s, v) = c.mutate(&id, k).await;
        assert_eq!(s, StatusCode::OK);
        for x in v["variables"].as_array().unwrap() {
            seen.insert(x.as_str().unwrap().to_string());
        }
        last = v;
    }
    assert_eq!(last["variables"], json!(["x2", "x1"]));
    assert_eq!(sorted(&last["variables"]), sorted(&start["variables"]));
    assert_eq!(last["step"], json!(5));
    let expected: std::collections::BTreeSet<String> = [
        "x1",
        "x2",
        "(1 + x2)/x1",
        "(1 + x1)/x2",
        "(1 + x1 + x2)/(x1*x2)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(seen, expected);
}

#[tokio::test]
async fn undo_restores_previous_step() {
    let c = Client::fresh();
    let id = c.create(r#"{"type":"A3","psi":[1,2,3]}"#).await;
    let mut states = vec![c.state(&id).await];
    for k in [0, 1, 2, 1] {
        assert_eq!(c.mutate(&id, k).await.0, StatusCode::OK);
        states.push(c.state(&id).await);
    }
    for k in (0..4).rev() {
        let (s, _) = c
            .call("POST", &format!("/api/session/{id}/undo"), None)
            .await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(c.state(&id).await, states[k]);
    }
    let (s, _) = c
        .call("POST", &format!("/api/session/{id}/undo"), None)
        .await;
    assert_eq!(s, StatusCode::CONFLICT);
}

#[tokio::test]
async fn error_statuses() {
    let c = Client::fresh();
    let id = c
        .create(r#"{"b":[[0,1,-1],[-1,0,0],[1,0,0]],"w":[1,2,0],"frozen":[2]}"#)
        .await;
    assert_eq!(c.mutate(&id, 2).await.0, StatusCode::CONFLICT);
    assert_eq!(c.mutate(&id, 7).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(c.mutate("s999", 0).await.0, StatusCode::NOT_FOUND);
    assert_eq!(
        c.call("GET", "/api/session/nope", None).await.0,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        c.call("POST", "/api/session/nope/undo", None).await.0,
        StatusCode::NOT_FOUND
    );
    let bad = [
        "not json",
        r#"{"b":[[0,1],[1,0]],"w":[1,1]}"#,
        r#"{"b":[[0,1],[-1,0]],"w":[1]}"#,
        r#"{"b":[[0,1],[-1,0]],"w":[1,1],"frozen":[5]}"#,
        r#"{"type":"X9"}"#,
        r#"{"type":"A2","psi":[1]}"#,
    ];
    for body in bad {
        let (s, _) = c.call("POST", "/api/session", Some(body)).await;
        assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
    }
    let (s, _) = c
        .call(
            "POST",
            &format!("/api/session/{id}/mutate"),
            Some(r#"{"v":0}"#),
        )
        .await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(
        c.call("GET", &format!("/api/session/{id}/graph?depth=99"), None)
            .await
            .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
}

#[tokio::test]
async fn frozen_variable_enters_exchange() {
    let c = Client::fresh();
    let id = c
        .create(r#"{"b":[[0,1,-1],[-1,0,0],[1,0,0]],"w":[1,2,0],"frozen":[2]}"#)
        .await;
    let (_, v) = c.mutate(&id, 0).await;
    assert_eq!(v["variables"], json!(["(x2 + x3)/x1", "x2", "x3"]));
    assert_eq!(v["mutable"], json!([0, 1]));
}

#[tokio::test]
async fn graph_neighbourhood() {
    let c = Client::fresh();
    let id = c.create(r#"{"type":"A2"}"#).await;
    let (s, g) = c
        .json("GET", &format!("/api/session/{id}/graph?depth=6"), None)
        .await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(g["nodes"].as_array().unwrap().len(), 5, "{g}");
    assert_eq!(g["edges"].as_array().unwrap().len(), 5);
    let (_, g1) = c
        .json("GET", &format!("/api/session/{id}/graph?depth=1"), None)
        .await;
    assert_eq!(g1["nodes"].as_array().unwrap().len(), 3);
    let (_, g3) = c
        .json("GET", &format!("/api/session/{id}/graph"), None)
        .await;
    assert_eq!(g3, g1);
    let id = c.create(r#"{"type":"A3"}"#).await;
    let (_, g) = c
        .json("GET", &format!("/api/session/{id}/graph?depth=6"), None)
        .await;
    assert_eq!(g["nodes"].as_array().unwrap().len(), 14);
}

#[tokio::test]
async fn replay_is_byte_identical() {
    let body = r#"{"b":[[0,1,-1],[-1,0,1],[1,-1,0]],"w":[1,-1,0]}"#;
    let a = Client::fresh();
    let id = a.create(body).await;
    for k in [0, 2, 1, 1, 0, 2] {
        a.mutate(&id, k).await;
    }
    a.call("POST", &format!("/api/session/{id}/undo"), None)
        .await;
    let original = a.state(&id).await;
    let history: Vec<usize> = serde_json::from_slice::<Value>(&original).unwrap()["history"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect();
    let b = Client::fresh();
    let id2 = b.create(body).await;
    for k in history {
        b.mutate(&id2, k).await;
    }
    assert_eq!(b.state(&id2).await, original);
}

#[tokio::test]
async fn persisted_sessions_survive_restart() {
    let dir = tempfile::tempdir().unwrap();
    let a = Client::new(AppState::new(Some(dir.path().to_path_buf())).unwrap());
    let id = a.create(r#"{"type":"B2","psi":[2,1]}"#).await;
    for k in [0, 1, 0] {
        a.mutate(&id, k).await;
    }
    a.call("POST", &format!("/api/session/{id}/undo"), None)
        .await;
    let before = a.state(&id).await;
    let b = Client::new(AppState::new(Some(dir.path().to_path_buf())).unwrap());
    assert_eq!(b.state(&id).await, before);
    let new_id = b.create(r#"{"type":"A1"}"#).await;
    assert_ne!(new_id, id);
}

#[tokio::test]
async fn concurrent_sessions_are_independent() {
    let c = Arc::new(Client::fresh());
    let ids: Vec<String> = create_a2_sessions(&c).await;
    let mut handles = Vec::new();
    for id in ids.clone() {
        let c = c.clone();
        handles.push(tokio::spawn(async move {
            for k in [0, 1, 0, 1, 0] {
                assert_eq!(c.mutate(&id, k).await.0, StatusCode::OK);
            }
        }));
    }
    for h in handles {
        h.await.unwrap();
    }
    let first = c.state(&ids[0]).await;
    for id in &ids[1..] {
        assert_eq!(c.state(id).await, first);
    }
}

async fn create_a2_sessions(c: &Client) -> Vec<String> {
    let mut ids = Vec::new();
    for _ in 0..8 {
        ids.push(c.create(r#"{"type":"A2"}"#).await);
    }
    ids
}
