use std::io::Write;

use clap::{Args, ValueEnum};
use heun::equation::{apply_rule, GaugeStage, VarMap};
use heun::Rule;
use serde::Serialize;
use serde_json::json;

use crate::complex::format as fc;
use crate::error::CliError;
use crate::output::{Record, Report};
use crate::{parse_params, Common};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    R1,
    R2,
    R3,
}

#[derive(Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// B1,B2,B3,omega,eta as complex literals
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
pub struct StageRecord {
    scale: String,
    c1: String,
    c2: String,
    r: String,
    var: String,
}

#[derive(Serialize)]
pub struct TransformRecord {
    rule: &'static str,
    b1: String,
    b2: String,
    b3: String,
    omega: String,
    eta: String,
    gauge: Vec<StageRecord>,
}

impl Record for TransformRecord {
    fn header() -> &'static [&'static str] {
        &["rule", "b1", "b2", "b3", "omega", "eta", "gauge"]
    }

    fn row(&self) -> Vec<String> {
        let gauge: Vec<String> = self
            .gauge
            .iter()
            .map(|s| format!("{}*exp(({})w+({})/w)*w^({}) at w={}", s.scale, s.c1, s.c2, s.r, s.var))
            .collect();
        vec![
            self.rule.into(),
            self.b1.clone(),
            self.b2.clone(),
            self.b3.clone(),
            self.omega.clone(),
            self.eta.clone(),
            gauge.join(" | "),
        ]
    }
}

fn describe(v: &VarMap) -> String {
    match *v {
        VarMap::Identity => "z".into(),
        VarMap::Inversion(c) => format!("({})/z", fc(c)),
        VarMap::Exponential(l) => format!("exp(({})z)", fc(l)),
        VarMap::Square => "z^2".into(),
        VarMap::Cosh2 { z0, sigma } => format!("({})cosh^2(({})z/2)", fc(z0), fc(sigma)),
        VarMap::ISinh { z0, sigma } => format!("({})(i sinh(({})z)+1)/2", fc(z0), fc(sigma)),
    }
}

fn stage(s: &GaugeStage) -> StageRecord {
    StageRecord {
        scale: fc(s.scale),
        c1: fc(s.c1),
        c2: fc(s.c2),
        r: fc(s.r),
        var: describe(&s.var),
    }
}

pub fn run(a: TransformArgs, out: &mut impl Write) -> Result<(), CliError> {
    let p = parse_params(&a.params)?;
    let (rule, name) = match a.rule {
        RuleArg::R1 => (Rule::R1, "r1"),
        RuleArg::R2 => (Rule::R2, "r2"),
        RuleArg::R3 => (Rule::R3, "r3"),
    };
    let (q, gauge) = apply_rule(rule, &p);
    let record = TransformRecord {
        rule: name,
        b1: fc(q.b1),
        b2: fc(q.b2),
        b3: fc(q.b3),
        omega: fc(q.omega),
        eta: fc(q.eta),
        gauge: gauge.stages.iter().map(stage).collect(),
    };
    let report = Report {
        command: "transform",
        config: json!({
            "rule": name,
            "params": [fc(p.b1), fc(p.b2), fc(p.b3), fc(p.omega), fc(p.eta)],
        }),
        meta: json!({}),
        records: vec![record],
    };
    report.write(a.common.format, out)
}
