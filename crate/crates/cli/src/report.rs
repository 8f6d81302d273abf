//! Report assembly: the convention block, per-task entries in declaration
//! order and the exit code.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use cohops_core::FieldSpec;
use serde_json::{json, Map, Value};

use crate::document::{Context, Failure, InstanceDocument, TaskSpec};
use crate::exec::{run_task, Outcome, Settings, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub settings: Settings,
    pub jobs: usize,
    pub timings: bool,
}

/// The sign and normalization choices every result depends on.
pub fn conventions() -> Value {
    json!({
        "monomial_order": "grevlex",
        "connecting_map_sign": "none: lift, apply the differential, pull back",
        "section_rule": "pivot section: each basis element of B lifts to the solution of p(s) = b with free coordinates zero",
        "bridge_sign": "(-1)^(n(n+1)/2) between n-extensions and cocycles",
        "product_sign": "(-1)^(pq) on the lifted cocycle, matching splicing",
        "s_map_pushout": "unsigned pushout of the bar resolution",
        "resolution": "minimal free presentations",
    })
}

struct Entry {
    result: Result<Outcome, Failure>,
    wall_ms: f64,
}

fn run_one(cx: &Context, spec: &TaskSpec, settings: Settings) -> Entry {
    let start = Instant::now();
    let result = run_task(cx, spec, settings);
    Entry {
        result,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs tasks in declaration order; consecutive independent tasks share a
/// pool of `jobs` threads. Entries come back in declaration order.
fn run_all(cx: &Context, tasks: &[TaskSpec], opts: RunOptions) -> Vec<Entry> {
    let mut out: Vec<Entry> = Vec::with_capacity(tasks.len());
    let mut i = 0;
    while i < tasks.len() {
        let end = if opts.jobs > 1 && tasks[i].independent {
            i + tasks[i..].iter().take_while(|t| t.independent).count()
        } else {
            i + 1
        };
        if end - i == 1 {
            out.push(run_one(cx, &tasks[i], opts.settings));
        } else {
            out.extend(run_parallel(cx, &tasks[i..end], opts));
        }
        i = end;
    }
    out
}

fn run_parallel(cx: &Context, tasks: &[TaskSpec], opts: RunOptions) -> Vec<Entry> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Entry>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..opts.jobs.min(tasks.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= tasks.len() {
                    break;
                }
                let entry = run_one(cx, &tasks[k], opts.settings);
                *slots[k].lock().expect("slot lock") = Some(entry);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().expect("slot lock").expect("task ran"))
        .collect()
}

fn header(field: FieldSpec, opts: RunOptions) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("conventions".into(), conventions());
    m.insert("field".into(), json!(field.to_string()));
    m.insert("max_degree".into(), json!(opts.settings.max_degree));
    m.insert("budget".into(), json!(opts.settings.budget));
    m
}

/// The report for a document that failed validation.
pub fn rejected(field: Option<FieldSpec>, opts: RunOptions, failure: &Failure) -> (Value, i32) {
    let mut m = match field {
        Some(f) => header(f, opts),
        None => {
            let mut m = Map::new();
            m.insert("conventions".into(), conventions());
            m
        }
    };
    let code = match failure {
        Failure::Invalid(_) => EXIT_INVALID,
        Failure::Internal(_) => EXIT_INTERNAL,
    };
    m.insert("status".into(), json!("error"));
    m.insert("error".into(), json!(failure.message()));
    m.insert("exit_code".into(), json!(code));
    m.insert("tasks".into(), json!([]));
    (Value::Object(m), code)
}

/// Executes a validated document.
pub fn run_document(doc: &InstanceDocument, field: FieldSpec, opts: RunOptions) -> (Value, i32) {
    let cx = match Context::build(doc, field) {
        Ok(cx) => cx,
        Err(f) => return rejected(Some(field), opts, &f),
    };
    let entries = run_all(&cx, &doc.tasks, opts);
    let (mut invalid, mut internal, mut failed) = (false, false, false);
    let mut rows = Vec::with_capacity(entries.len());
    for (index, (spec, entry)) in doc.tasks.iter().zip(entries).enumerate() {
        let mut row = Map::new();
        row.insert("index".into(), json!(index));
        row.insert("op".into(), json!(spec.op));
        if let Some(l) = &spec.label {
            row.insert("label".into(), json!(l));
        }
        match entry.result {
            Ok(out) => {
                let fail = out.status == Status::Fail;
                failed |= fail;
                row.insert("status".into(), json!(if fail { "fail" } else { "ok" }));
                row.insert("summary".into(), json!(out.summary));
                row.extend(out.data);
            }
            Err(f) => {
                match f {
                    Failure::Invalid(_) => invalid = true,
                    Failure::Internal(_) => internal = true,
                }
                row.insert("status".into(), json!("error"));
                row.insert("error".into(), json!(f.message()));
            }
        }
        if opts.timings {
            row.insert("wall_ms".into(), json!((entry.wall_ms * 1e3).round() / 1e3));
        }
        rows.push(Value::Object(row));
    }
    let code = if invalid {
        EXIT_INVALID
    } else if internal {
        EXIT_INTERNAL
    } else if failed {
        EXIT_FAIL
    } else {
        EXIT_OK
    };
    let status = match code {
        EXIT_OK => "ok",
        EXIT_FAIL => "fail",
        _ => "error",
    };
    let mut m = header(field, opts);
    m.insert("status".into(), json!(status));
    m.insert("exit_code".into(), json!(code));
    m.insert("tasks".into(), Value::Array(rows));
    (Value::Object(m), code)
}
