mod common;

use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use common::*;
use dcfpr_interface::http::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(Duration::from_secs(3600)))
}

async fn call(
    app: &Router,
    method: Method,
    uri: &str,
    body: Option<String>,
) -> (StatusCode, Value) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, Body::from))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn session(app: &Router) -> String {
    let (status, body) = call(app, Method::POST, "/api/sessions", None).await;
    assert_eq!(status, StatusCode::CREATED);
    body["id"].as_str().unwrap().to_string()
}

fn weights(v: &Value) -> Vec<f64> {
    v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_f64().unwrap())
        .collect()
}

#[tokio::test]
async fn health() {
    let (status, body) = call(&app(), Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"status": "ok"}));
}

#[tokio::test]
async fn upload_and_solve_at_medium_credibility() {
    let app = app();
    let id = session(&app).await;
    let (status, body) = call(
        &app,
        Method::PUT,
        &format!("/api/sessions/{id}/problem"),
        Some(read("example2.json")),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["solvable"], true);

    let (status, body) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/solution?credibility=medium"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_close(&weights(&body), &[0.289, 0.280, 0.246, 0.186], 1e-3);

    let (status, body) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/matrix"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["matrix"][3][0].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn patching_a_comparison_reorders() {
    let app = app();
    let id = session(&app).await;
    call(
        &app,
        Method::PUT,
        &format!("/api/sessions/{id}/problem"),
        Some(read("example1.json")),
    )
    .await;
    let (status, body) = call(
        &app,
        Method::PATCH,
        &format!("/api/sessions/{id}/comparisons/1"),
        Some(json!({"components": [{"b": 0.45, "v": 1.0}]}).to_string()),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["solvable"], true);

    let (_, body) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/solution"),
        None,
    )
    .await;
    let positions = &body["ranking"]["positions"];
    assert!(positions[1].as_u64() < positions[0].as_u64(), "{positions}");
    let w = weights(&body);
    assert!(w[1] > w[0]);
}

#[tokio::test]
async fn drafts_fill_in_incrementally() {
    let app = app();
    let id = session(&app).await;
    let draft = json!({"version": 1, "alternatives": ["x", "y", "z"], "comparisons": []});
    let (status, body) = call(
        &app,
        Method::PUT,
        &format!("/api/sessions/{id}/problem"),
        Some(draft.to_string()),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["solvable"], false);
    assert_eq!(body["diagnostics"].as_array().unwrap().len(), 2);

    let (status, _) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/solution"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);

    for k in [2, 1] {
        let (status, body) = call(
            &app,
            Method::PATCH,
            &format!("/api/sessions/{id}/comparisons/{k}"),
            Some(json!({"components": [{"b": 0.6, "v": 1.0}]}).to_string()),
        )
        .await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body["solvable"], k == 1);
    }
    let (status, body) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/solution"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["ranking"]["order"], json!([1, 2, 3]));
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let id = session(&app).await;
    let base = format!("/api/sessions/{id}");

    // No problem yet.
    assert_eq!(
        call(&app, Method::GET, &format!("{base}/matrix"), None)
            .await
            .0,
        StatusCode::CONFLICT
    );
    assert_eq!(
        call(&app, Method::GET, &format!("{base}/solution"), None)
            .await
            .0,
        StatusCode::CONFLICT
    );
    let patch = Some(json!({"components": [{"b": 0.5, "v": 1.0}]}).to_string());
    assert_eq!(
        call(
            &app,
            Method::PATCH,
            &format!("{base}/comparisons/1"),
            patch.clone()
        )
        .await
        .0,
        StatusCode::CONFLICT
    );

    // Invalid uploads carry pointers.
    let bad = json!({"version": 1, "alternatives": ["A", "B"],
        "comparisons": [{"left": 1, "right": 2, "components": [{"b": 2.0, "v": 1.0}]}]});
    let (status, body) = call(
        &app,
        Method::PUT,
        &format!("{base}/problem"),
        Some(bad.to_string()),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(
        body["errors"][0]["pointer"],
        "/comparisons/0/components/0/b"
    );
    let (status, _) = call(
        &app,
        Method::PUT,
        &format!("{base}/problem"),
        Some("{".into()),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    call(
        &app,
        Method::PUT,
        &format!("{base}/problem"),
        Some(read("example2.json")),
    )
    .await;
    let (status, body) = call(
        &app,
        Method::GET,
        &format!("{base}/solution?lambda=1"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!((body["lambda_min"].as_f64().unwrap() - 1.018182).abs() < 1e-3);

    for query in [
        "lambda=abc",
        "lambda=0",
        "credibility=extreme",
        "lambda=2&credibility=low",
        "mode=x",
        "foo=1",
    ] {
        let (status, _) = call(&app, Method::GET, &format!("{base}/solution?{query}"), None).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{query}");
    }
    for k in ["0", "4", "one"] {
        let (status, _) = call(
            &app,
            Method::PATCH,
            &format!("{base}/comparisons/{k}"),
            patch.clone(),
        )
        .await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{k}");
    }
    let bad_patch =
        Some(json!({"components": [{"b": 0.5, "v": 0.7}, {"b": 0.6, "v": 0.7}]}).to_string());
    let (status, body) = call(
        &app,
        Method::PATCH,
        &format!("{base}/comparisons/1"),
        bad_patch,
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["errors"][0]["pointer"], "/components");

    let unknown = "/api/sessions/00000000-0000-4000-8000-000000000000/matrix";
    assert_eq!(
        call(&app, Method::GET, unknown, None).await.0,
        StatusCode::NOT_FOUND
    );
    assert_eq!(
        call(&app, Method::GET, "/api/sessions/nope/matrix", None)
            .await
            .0,
        StatusCode::NOT_FOUND
    );
}

#[tokio::test]
async fn expired_sessions_disappear() {
    let state = AppState::new(Duration::from_millis(20));
    let app = router(state.clone());
    let id = session(&app).await;
    tokio::time::sleep(Duration::from_millis(50)).await;
    assert_eq!(state.purge_expired().await, 1);
    let (status, _) = call(
        &app,
        Method::GET,
        &format!("/api/sessions/{id}/matrix"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn service_and_cli_agree() {
    let app = app();
    let id = session(&app).await;
    call(
        &app,
        Method::PUT,
        &format!("/api/sessions/{id}/problem"),
        Some(read("example2.json")),
    )
    .await;
    for (query, flags) in [
        ("credibility=high", vec!["--credibility", "high"]),
        ("credibility=low", vec!["--credibility", "low"]),
        ("lambda=5.5", vec!["--lambda", "5.5"]),
        (
            "lambda=3&mode=heuristic",
            vec!["--lambda", "3", "--heuristic"],
        ),
    ] {
        let (_, service) = call(
            &app,
            Method::GET,
            &format!("/api/sessions/{id}/solution?{query}"),
            None,
        )
        .await;
        let path = data("example2.json");
        let mut args = vec!["solve", "-i", path.to_str().unwrap()];
        args.extend(flags);
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        let cli: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(service, cli, "{query}");
    }
}
