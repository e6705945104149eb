use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::format::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// The structure was read fine but fails the check.
    Fail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// `sha256:` of the command, its flags and the input bytes.
    pub inputs_digest: String,
    pub pass: bool,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip)]
    pub status: Status,
    #[serde(skip)]
    pub text: String,
}

pub fn digest(command: &str, flags: &[(&str, String)], input: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    for (k, v) in flags {
        h.update(k.as_bytes());
        h.update(b"=");
        h.update(v.as_bytes());
        h.update([0]);
    }
    h.update(input);
    format!("sha256:{}", hex::encode(h.finalize()))
}

impl Report {
    pub fn new(command: &str, inputs_digest: String) -> Self {
        Report {
            schema: 1,
            command: command.to_string(),
            inputs_digest,
            pass: true,
            residuals: Vec::new(),
            error: None,
            elapsed_ms: None,
            status: Status::Pass,
            text: String::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn residual(&mut self, name: impl Into<String>, value: impl ToString) {
        self.residuals.push(Residual {
            name: name.into(),
            value: value.to_string(),
        });
    }

    /// Records a mathematical failure; input errors take precedence.
    pub fn fail(&mut self) {
        self.pass = false;
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn input_error(&mut self, e: &InputError) {
        self.pass = false;
        self.status = Status::InputError;
        self.error = Some(ErrorInfo {
            code: e.code().into(),
            message: e.to_string(),
        });
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
