use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt as _;
use serde_json::{json, Value};
use textpuzzle_core::graders::grade;
use textpuzzle_core::prompting::render_prompt;
use textpuzzle_core::solvers::{solve, DEFAULT_BUDGET};
use textpuzzle_core::*;
use textpuzzle_serve::api::SCHEMA;
use textpuzzle_serve::*;
use tower::ServiceExt as _;

struct App {
    router: Router,
    store: Arc<Store>,
    clock: Arc<ManualClock>,
}

fn app_with(source: PuzzleSource, config: ApiConfig) -> App {
    let clock = Arc::new(ManualClock::new(1_000.0));
    let store = Arc::new(Store::in_memory(source, clock.clone()));
    App { router: router(store.clone(), &config), store, clock }
}

fn app() -> App {
    app_with(PuzzleSource::Generate, ApiConfig::default())
}

async fn call(app: &App, method: Method, uri: &str, body: Option<Value>, headers: &[(&str, &str)]) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    for (k, v) in headers {
        req = req.header(*k, *v);
    }
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.router.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

async fn create(app: &App, body: Value) -> Value {
    let (status, v) = call(app, Method::POST, "/sessions", Some(body), &[]).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v
}

async fn answer(app: &App, id: &str, text: &str, key: Option<&str>) -> (StatusCode, Value) {
    let headers: Vec<(&str, &str)> = key.map(|k| ("idempotency-key", k)).into_iter().collect();
    call(app, Method::POST, &format!("/sessions/{id}/answer"), Some(json!({ "answer": text })), &headers).await
}

fn sudoku_instance(id: &str) -> PuzzleInstance {
    let mut inst = PuzzleInstance {
        id: id.into(),
        game: GameKind::TextSudoku,
        difficulty: Difficulty::Easy,
        seed: 0,
        constraints: ConstraintSet::Sudoku(SudokuConstraints {
            box_size: 2,
            alphabet: vec!['A', 'B', 'C', 'D'],
            grid: SymbolGrid::parse_rows("A_CD/CD_B/_AD_/DCBA"),
        }),
        prompt: String::new(),
    };
    inst.prompt = render_prompt(&inst);
    inst
}

const SUDOKU_ANSWER: &str = "ABCD\nCDAB\nBADC\nDCBA";

fn sudoku_app() -> App {
    app_with(
        PuzzleSource::Suite(vec![sudoku_instance("sudoku-a"), sudoku_instance("sudoku-b")]),
        ApiConfig::default(),
    )
}

#[tokio::test]
async fn default_sessions_hold_two_or_three_puzzles() {
    let app = app();
    let mut counts = std::collections::BTreeSet::new();
    for seed in 0..16 {
        let v = create(&app, json!({ "seed": seed })).await;
        assert_eq!(v["index"], 0);
        let n = v["count"].as_u64().unwrap();
        assert!((2..=3).contains(&n));
        counts.insert(n);
        let stored = app.store.session(v["session_id"].as_str().unwrap()).unwrap();
        assert_eq!(stored.puzzles.len() as u64, n);
        assert_eq!(v["puzzle"]["prompt"], stored.puzzles[0].prompt);
    }
    assert_eq!(counts.len(), 2);
    let bad = call(&app, Method::POST, "/sessions", Some(json!({ "count": 4 })), &[]).await;
    assert_eq!(bad.0, StatusCode::BAD_REQUEST);
    assert_eq!(bad.1["error"], "invalid_count");
}

#[tokio::test]
async fn filters_apply_to_every_puzzle() {
    let app = app();
    let v = create(&app, json!({ "game": "islands", "difficulty": "hard" })).await;
    let stored = app.store.session(v["session_id"].as_str().unwrap()).unwrap();
    assert!(stored
        .puzzles
        .iter()
        .all(|p| p.game == GameKind::Islands && p.difficulty == Difficulty::Hard));
    assert!(v["puzzle"]["prompt"].as_str().unwrap().to_lowercase().contains("island"));
    let bad = call(&app, Method::POST, "/sessions", Some(json!({ "game": "chess" })), &[]).await;
    assert_eq!(bad.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn fixed_seed_repeats_the_puzzle_sequence() {
    let app = app();
    let ids = |v: &Value| -> Vec<String> {
        app.store
            .session(v["session_id"].as_str().unwrap())
            .unwrap()
            .puzzles
            .iter()
            .map(|p| p.id.clone())
            .collect()
    };
    let a = create(&app, json!({ "seed": 42 })).await;
    let b = create(&app, json!({ "seed": 42 })).await;
    let c = create(&app, json!({ "seed": 43 })).await;
    assert_ne!(a["session_id"], b["session_id"]);
    assert_eq!(ids(&a), ids(&b));
    assert_ne!(ids(&a), ids(&c));
}

#[tokio::test]
async fn sudoku_session_state_machine() {
    let app = sudoku_app();
    let v = create(&app, json!({ "count": 2 })).await;
    let id = v["session_id"].as_str().unwrap().to_string();

    let (status, r) = answer(&app, &id, SUDOKU_ANSWER, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["solved"], true);
    assert_eq!(r["attempts"], 1);
    assert_eq!(r["advance"], true);
    assert_eq!(r["complete"], false);
    assert_eq!(r["feedback"], json!([]));

    let (_, r) = answer(&app, &id, "ABCD\nCDAB\nBADC", None).await;
    assert_eq!(r["solved"], false);
    assert_eq!(r["attempts"], 1);
    assert_eq!(r["feedback"], json!(["Your answer is wrong in shape, it should be 4x4 sudoku."]));

    let stale = call(
        &app,
        Method::POST,
        &format!("/sessions/{id}/answer"),
        Some(json!({ "answer": SUDOKU_ANSWER, "index": 0 })),
        &[],
    )
    .await;
    assert_eq!(stale.0, StatusCode::CONFLICT);
    assert_eq!(stale.1["error"], "puzzle_solved");

    let (_, r) = answer(&app, &id, SUDOKU_ANSWER, None).await;
    assert_eq!((r["solved"].clone(), r["attempts"].clone(), r["complete"].clone()), (json!(true), json!(2), json!(true)));

    let (status, r) = answer(&app, &id, SUDOKU_ANSWER, None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(r["error"], "session_complete");

    let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
    assert_eq!(p["complete"], true);
    assert_eq!(p["puzzle"], Value::Null);
}

#[tokio::test]
async fn repeated_idempotency_key_counts_one_attempt() {
    let app = sudoku_app();
    let id = create(&app, json!({})).await["session_id"].as_str().unwrap().to_string();
    let (_, first) = answer(&app, &id, "ABCD", Some("k1")).await;
    let (_, again) = answer(&app, &id, "ABCD", Some("k1")).await;
    assert_eq!(first["attempts"], 1);
    assert_eq!(again["attempts"], 1);
    assert_eq!(first["replayed"], false);
    assert_eq!(again["replayed"], true);
    assert_eq!(first["feedback"], again["feedback"]);

    let body_key = call(
        &app,
        Method::POST,
        &format!("/sessions/{id}/answer"),
        Some(json!({ "answer": "ABCD", "idempotency_key": "k1" })),
        &[],
    )
    .await;
    assert_eq!(body_key.1["attempts"], 1);

    let conflict = answer(&app, &id, "DCBA", Some("k1")).await;
    assert_eq!(conflict.0, StatusCode::UNPROCESSABLE_ENTITY);

    let (_, solved) = answer(&app, &id, SUDOKU_ANSWER, Some("k2")).await;
    assert_eq!(solved["attempts"], 2);
    let (_, replay) = answer(&app, &id, SUDOKU_ANSWER, Some("k2")).await;
    assert_eq!(replay["solved"], true);
    assert_eq!(replay["index"], 0);
    assert_eq!(app.store.session(&id).unwrap().progress[0].attempts, 2);
    assert_eq!(app.store.session(&id).unwrap().current, 1);
}

#[tokio::test]
async fn stats_match_single_datum_and_means() {
    let app = sudoku_app();
    let a = create(&app, json!({ "game": "sudoku", "count": 2 })).await["session_id"].as_str().unwrap().to_string();
    app.clock.advance(12.0);
    answer(&app, &a, SUDOKU_ANSWER, None).await;

    let (_, s) = call(&app, Method::GET, &format!("/stats?scope=session&session={a}"), None, &[]).await;
    assert_eq!(s["columns"], json!(["first_turn_rate", "avg_attempts", "avg_time_s"]));
    let row = &s["rows"][0];
    assert_eq!((row["first_turn_rate"].as_f64(), row["avg_attempts"].as_f64(), row["avg_time_s"].as_f64()), (Some(100.0), Some(1.0), Some(12.0)));

    let b = create(&app, json!({ "count": 2 })).await["session_id"].as_str().unwrap().to_string();
    answer(&app, &b, "x", None).await;
    answer(&app, &b, "y", None).await;
    app.clock.advance(30.0);
    answer(&app, &b, SUDOKU_ANSWER, None).await;

    let (_, g) = call(&app, Method::GET, "/stats?scope=global", None, &[]).await;
    assert_eq!(g["rows"].as_array().unwrap().len(), 1);
    let row = &g["rows"][0];
    assert_eq!(row["avg_attempts"].as_f64(), Some(2.0));
    assert_eq!(row["first_turn_rate"].as_f64(), Some(50.0));
    assert_eq!(row["avg_time_s"].as_f64(), Some(21.0));
    let (_, default_scope) = call(&app, Method::GET, "/stats", None, &[]).await;
    assert_eq!(default_scope["rows"], g["rows"]);

    let unknown = call(&app, Method::GET, "/stats?scope=session&session=nope", None, &[]).await;
    assert_eq!(unknown.0, StatusCode::NOT_FOUND);
    let missing = call(&app, Method::GET, "/stats?scope=session", None, &[]).await;
    assert_eq!(missing.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn timer_starts_at_first_fetch_and_is_monotone() {
    let app = app();
    let v = create(&app, json!({ "game": "anagram", "count": 2, "seed": 5 })).await;
    let id = v["session_id"].as_str().unwrap().to_string();
    let mut last = (0u64, 0.0f64);
    for step in 0..4 {
        app.clock.advance(3.0);
        if step % 2 == 1 {
            answer(&app, &id, "zzzzzzzz", None).await;
        }
        let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
        let now = (p["puzzle"]["attempts"].as_u64().unwrap(), p["puzzle"]["elapsed_s"].as_f64().unwrap());
        assert!(now.0 >= last.0 && now.1 >= last.1);
        last = now;
    }
    assert_eq!(last, (2, 12.0));

    let state = app.store.session(&id).unwrap();
    let oracle = solve(&state.puzzles[0], DEFAULT_BUDGET).unwrap().answer;
    answer(&app, &id, &oracle, None).await;
    app.clock.advance(100.0);
    let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
    assert_eq!(p["index"], 1);
    assert_eq!(p["puzzle"]["elapsed_s"].as_f64(), Some(0.0));
    app.clock.advance(4.0);
    let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
    assert_eq!(p["puzzle"]["elapsed_s"].as_f64(), Some(4.0));
    assert_eq!(app.store.session(&id).unwrap().progress[0].elapsed(1e12), 12.0);
}

#[tokio::test]
async fn served_verdicts_equal_library_verdicts() {
    let app = app();
    for (i, game) in GameKind::ALL.into_iter().enumerate() {
        let v = create(&app, json!({ "game": game.slug(), "count": 2, "seed": i })).await;
        let id = v["session_id"].as_str().unwrap().to_string();
        let inst = app.store.session(&id).unwrap().puzzles[0].clone();
        let oracle = solve(&inst, DEFAULT_BUDGET).unwrap().answer;
        let mut tries: Vec<String> = vec!["".into(), "abc".into(), oracle.chars().rev().collect(), oracle[1..].to_string()];
        tries.push(oracle.clone());
        for t in tries {
            let want = grade(&inst, &t);
            let (_, r) = answer(&app, &id, &t, None).await;
            assert_eq!(r["solved"].as_bool(), Some(want.solved));
            let got: Vec<String> = serde_json::from_value(r["feedback"].clone()).unwrap();
            assert_eq!(got, want.feedback);
            if want.solved {
                break;
            }
        }
    }
}

fn without_prompts(mut v: Value) -> String {
    fn scrub(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("prompt");
                m.values_mut().for_each(scrub);
            }
            Value::Array(a) => a.iter_mut().for_each(scrub),
            _ => {}
        }
    }
    scrub(&mut v);
    v.to_string()
}

#[tokio::test]
async fn reference_solutions_never_leave_the_server() {
    let app = app();
    let mut bodies = Vec::new();
    for (i, game) in GameKind::ALL.into_iter().enumerate() {
        for d in Difficulty::ALL {
            let v = create(&app, json!({ "game": game.slug(), "difficulty": d.slug(), "count": 3, "seed": 100 + i })).await;
            let id = v["session_id"].as_str().unwrap().to_string();
            bodies.push(without_prompts(v));
            let state = app.store.session(&id).unwrap();
            for inst in &state.puzzles {
                let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
                bodies.push(without_prompts(p));
                let (_, r) = answer(&app, &id, "nope", None).await;
                bodies.push(r.to_string());
                let oracle = solve(inst, DEFAULT_BUDGET).unwrap().answer;
                let (_, r) = answer(&app, &id, &oracle, None).await;
                bodies.push(r.to_string());
                let encoded = serde_json::to_string(&oracle).unwrap();
                let needle = encoded.trim_matches('"');
                if inst.prompt.contains(&oracle) {
                    continue;
                }
                for b in &bodies {
                    assert!(!b.contains(needle), "{} leaked in {b}", inst.id);
                }
            }
        }
    }
    let (_, s) = call(&app, Method::GET, "/stats", None, &[]).await;
    bodies.push(s.to_string());
    for b in &bodies {
        assert!(!b.contains("\"solution\"") && !b.contains("\"constraints\""), "{b}");
    }
}

#[tokio::test]
async fn unknown_sessions_are_not_found() {
    let app = app();
    let (s, v) = call(&app, Method::GET, "/sessions/missing/puzzle", None, &[]).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::NOT_FOUND, Some("unknown_session")));
    let (s, _) = answer(&app, "missing", "x", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn shared_token_and_cors() {
    let app = app_with(
        PuzzleSource::Generate,
        ApiConfig { token: Some("t0k".into()), cors_origin: Some("http://localhost:5173".into()) },
    );
    let (s, v) = call(&app, Method::POST, "/sessions", Some(json!({})), &[]).await;
    assert_eq!((s, v["error"].as_str()), (StatusCode::UNAUTHORIZED, Some("unauthorized")));
    let (s, _) = call(&app, Method::POST, "/sessions", Some(json!({})), &[("authorization", "Bearer nope")]).await;
    assert_eq!(s, StatusCode::UNAUTHORIZED);
    let (s, _) = call(&app, Method::POST, "/sessions", Some(json!({})), &[("authorization", "Bearer t0k")]).await;
    assert_eq!(s, StatusCode::CREATED);

    let preflight = Request::builder()
        .method(Method::OPTIONS)
        .uri("/sessions")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .header("access-control-request-headers", "idempotency-key,content-type")
        .body(Body::empty())
        .unwrap();
    let resp = app.router.clone().oneshot(preflight).await.unwrap();
    assert!(resp.status().is_success());
    let h = resp.headers();
    assert_eq!(h["access-control-allow-origin"], "http://localhost:5173");
    assert!(h["access-control-allow-headers"].to_str().unwrap().contains("idempotency-key"));

    let open = app_with(PuzzleSource::Generate, ApiConfig::default());
    let (s, _) = call(&open, Method::POST, "/sessions", Some(json!({})), &[]).await;
    assert_eq!(s, StatusCode::CREATED);
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

fn schema_required(schema: &Value, def: &str) -> Vec<String> {
    let mut k: Vec<String> = serde_json::from_value(schema["$defs"][def]["required"].clone()).unwrap();
    k.sort();
    k
}

#[tokio::test]
async fn payloads_match_the_schema_file() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    for route in ["POST /sessions", "GET /sessions/{id}/puzzle", "POST /sessions/{id}/answer", "GET /stats"] {
        assert!(schema["routes"].get(route).is_some(), "{route}");
    }
    let app = sudoku_app();
    let created = create(&app, json!({})).await;
    assert_eq!(keys(&created), schema_required(&schema, "SessionCreated"));
    assert_eq!(keys(&created["puzzle"]), schema_required(&schema, "PuzzleView"));
    let id = created["session_id"].as_str().unwrap();
    let (_, p) = call(&app, Method::GET, &format!("/sessions/{id}/puzzle"), None, &[]).await;
    assert_eq!(keys(&p), schema_required(&schema, "PuzzleResponse"));
    let (_, r) = answer(&app, id, SUDOKU_ANSWER, None).await;
    assert_eq!(keys(&r), schema_required(&schema, "AnswerResult"));
    let (_, s) = call(&app, Method::GET, "/stats", None, &[]).await;
    assert_eq!(keys(&s), schema_required(&schema, "Stats"));
    assert_eq!(keys(&s["rows"][0]), schema_required(&schema, "StatsRow"));
    let (_, e) = answer(&app, "missing", "x", None).await;
    assert_eq!(keys(&e), schema_required(&schema, "Error"));
    for code in ["unknown_session", "session_complete", "puzzle_solved", "idempotency_conflict", "unauthorized"] {
        assert!(schema["errors"]["codes"].get(code).is_some(), "{code}");
    }
    let (status, served) = call(&app, Method::GET, "/schema", None, &[]).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(served, schema);
}
