use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
    #[serde(rename = "CONJECTURE-PASS")]
    ConjecturePass,
    #[serde(rename = "CONJECTURE-FAIL")]
    ConjectureFail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn conjecture(ok: bool) -> Self {
        if ok {
            Status::ConjecturePass
        } else {
            Status::ConjectureFail
        }
    }

    /// Worst status of a collection: `FAIL` over `CONJECTURE-FAIL` over the
    /// passing ones.
    pub fn combine(items: impl IntoIterator<Item = Status>) -> Status {
        let rank = |s: Status| match s {
            Status::Error => 4,
            Status::Fail => 3,
            Status::ConjectureFail => 2,
            Status::ConjecturePass => 1,
            Status::Pass => 0,
        };
        items.into_iter().max_by_key(|&s| rank(s)).unwrap_or(Status::Pass)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::ConjecturePass | Status::ConjectureFail => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::ConjecturePass => "CONJECTURE-PASS",
            Status::ConjectureFail => "CONJECTURE-FAIL",
        })
    }
}

/// One invocation's result. `lines` is the human-readable rendering and is
/// not serialized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub payload: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, status: Status, payload: Value) -> Self {
        Report {
            command: command.to_string(),
            parameters: Map::new(),
            status,
            payload,
            lines: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }

    pub fn error(command: &str, message: String) -> Self {
        Report::new(command, Status::Error, serde_json::json!({ "error": message }))
            .lines(vec![format!("ERROR {message}")])
    }
}

/// Integers are written as JSON numbers of arbitrary size.
pub fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn bigs<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(big).collect())
}

/// Rationals are written as integers when integral and `"p/q"` strings
/// otherwise.
pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        big(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_stay_exact() {
        let x: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&big(&x)).unwrap();
        assert_eq!(s, "123456789012345678901234567890");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_string(), s);
    }

    #[test]
    fn status_combination() {
        use Status::*;
        assert_eq!(Status::combine([Pass, ConjectureFail, ConjecturePass]), ConjectureFail);
        assert_eq!(Status::combine([Pass, Fail, ConjectureFail]), Fail);
        assert_eq!(Status::combine([]), Pass);
        assert_eq!(ConjectureFail.exit_code(), 0);
        assert_eq!(Fail.exit_code(), 1);
    }
}
