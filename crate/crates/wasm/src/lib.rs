//! Browser bindings: construct, verify and repair, each returning JSON text.

use serde_json::json;
use wasm_bindgen::prelude::*;

use lrc_cli::commands::{self, Mode, DEFAULT_SEED};

/// Enumeration budget for in-browser verification; larger codes fall back to bounds.
const BROWSER_BUDGET: u128 = 1 << 20;

/// `{"exit", "log", "matrix"}` where `matrix` is null on failure.
#[wasm_bindgen]
pub fn construct(plan_json: &str) -> String {
    let (matrix, out) = commands::construct(plan_json);
    json!({ "exit": out.exit, "log": out.stdout, "matrix": matrix }).to_string()
}

#[wasm_bindgen]
pub fn verify(matrix: &str, bounded: bool, seed: Option<u64>) -> String {
    let mode = if bounded { Mode::Bounded } else { Mode::Exhaustive };
    let out = commands::verify(matrix, mode, BROWSER_BUDGET, seed.unwrap_or(DEFAULT_SEED));
    json!({ "exit": out.exit, "log": out.stdout }).to_string()
}

/// `erase` is a comma-separated position list such as `"0,1"`.
#[wasm_bindgen]
pub fn repair_demo(matrix: &str, erase: &str, seed: Option<u64>) -> String {
    let positions: Result<Vec<usize>, _> = erase.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let out = match positions {
        Ok(p) if !p.is_empty() => commands::repair_demo(matrix, &p, seed.unwrap_or(DEFAULT_SEED)),
        _ => commands::Output { stdout: format!("error: bad erasure list {erase:?}\n"), exit: commands::EXIT_INVALID },
    };
    json!({ "exit": out.exit, "log": out.stdout }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_verify_repair() {
        let c: serde_json::Value =
            serde_json::from_str(&construct(r#"{"field":{"p":13,"m":1},"family":"ExtendAll","r":2,"s":2,"t":2}"#)).unwrap();
        assert_eq!(c["exit"], 0);
        let m = c["matrix"].as_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(&verify(m, false, None)).unwrap();
        assert!(v["log"].as_str().unwrap().contains("optimal, d = 3"));
        let r: serde_json::Value = serde_json::from_str(&repair_demo(m, "0, 1", Some(3))).unwrap();
        assert_eq!(r["exit"], 0);
        let bad: serde_json::Value = serde_json::from_str(&repair_demo(m, "x", None)).unwrap();
        assert_eq!(bad["exit"], 3);
    }
}
