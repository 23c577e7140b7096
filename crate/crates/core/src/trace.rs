//! Line-delimited JSON trace format.
//!
//! One header record, one record per executed step, one trailer record.
//! Field order is fixed by the record structs, so identical traces
//! serialize to identical bytes. See `docs/formats.md`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::engine::{Action, CollisionKind, CollisionReport, Outcome, Trace, TraceStep, VisibilityRange};
use crate::error::Error;
use crate::grid::TriCoord;

pub const FORMAT_ID: &str = "trigather-trace/1";

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "record", rename_all = "lowercase", deny_unknown_fields)]
enum Record {
    Header {
        format: String,
        algorithm: String,
        range: u32,
        initial: Vec<TriCoord>,
    },
    Step {
        index: usize,
        decisions: Vec<String>,
        next: Vec<TriCoord>,
        connected: bool,
    },
    Trailer {
        outcome: String,
        steps: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycle_start: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycle: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        collision: Option<CollisionRecord>,
    },
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct CollisionRecord {
    kind: String,
    node: TriCoord,
    participants: Vec<(TriCoord, String)>,
}

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("trace line {line}: {}", msg.into()))
}

pub fn write_trace<W: Write>(trace: &Trace, mut w: W) -> Result<(), Error> {
    let mut emit = |r: &Record| -> Result<(), Error> {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
        Ok(())
    };
    emit(&Record::Header {
        format: FORMAT_ID.to_string(),
        algorithm: trace.algorithm.clone(),
        range: trace.range.as_u32(),
        initial: trace.initial.robots().to_vec(),
    })?;
    for (i, s) in trace.steps.iter().enumerate() {
        emit(&Record::Step {
            index: i + 1,
            decisions: s.decisions.iter().map(|a| a.name().to_string()).collect(),
            next: s.next.robots().to_vec(),
            connected: s.connected,
        })?;
    }
    let (mut cycle_start, mut cycle, mut collision) = (None, None, None);
    match &trace.outcome {
        Outcome::Livelock { start, cycle: len } => {
            cycle_start = Some(*start);
            cycle = Some(*len);
        }
        Outcome::Collision(r) => {
            collision = Some(CollisionRecord {
                kind: r.kind.name().to_string(),
                node: r.node,
                participants: r.participants.iter().map(|&(c, a)| (c, a.name().to_string())).collect(),
            })
        }
        _ => {}
    }
    emit(&Record::Trailer {
        outcome: trace.outcome.name().to_string(),
        steps: trace.step_count(),
        cycle_start,
        cycle,
        collision,
    })
}

pub fn trace_to_string(trace: &Trace) -> String {
    let mut buf = Vec::new();
    write_trace(trace, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn read_trace<R: BufRead>(r: R) -> Result<Trace, Error> {
    let mut records = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line).map_err(|e| line_err(i + 1, e.to_string()))?;
        records.push((i + 1, rec));
    }
    let mut it = records.into_iter();
    let Some((
        _,
        Record::Header {
            format,
            algorithm,
            range,
            initial,
        },
    )) = it.next()
    else {
        return Err(line_err(1, "expected header record"));
    };
    if format != FORMAT_ID {
        return Err(line_err(1, format!("unsupported format `{format}`")));
    }
    let range = VisibilityRange::from_u32(range).ok_or_else(|| line_err(1, "range must be 1 or 2"))?;
    let initial = Configuration::new(initial)?;
    let mut steps = Vec::new();
    for (line, rec) in it {
        match rec {
            Record::Step {
                index,
                decisions,
                next,
                connected,
            } => {
                if index != steps.len() + 1 {
                    return Err(line_err(line, "step index out of sequence"));
                }
                let decisions = decisions
                    .iter()
                    .map(|d| Action::from_name(d).ok_or_else(|| line_err(line, format!("unknown action `{d}`"))))
                    .collect::<Result<_, _>>()?;
                steps.push(TraceStep {
                    decisions,
                    next: Configuration::new(next)?,
                    connected,
                });
            }
            Record::Trailer {
                outcome,
                steps: count,
                cycle_start,
                cycle,
                collision,
            } => {
                if count != steps.len() {
                    return Err(line_err(line, "trailer step count mismatch"));
                }
                let outcome = match outcome.as_str() {
                    "gathered" => Outcome::Gathered,
                    "disconnected" => Outcome::Disconnected,
                    "step-limit" => Outcome::StepLimit,
                    "livelock" => Outcome::Livelock {
                        start: cycle_start.ok_or_else(|| line_err(line, "livelock without cycle_start"))?,
                        cycle: cycle.ok_or_else(|| line_err(line, "livelock without cycle"))?,
                    },
                    "collision" => {
                        let c = collision.ok_or_else(|| line_err(line, "collision without details"))?;
                        Outcome::Collision(CollisionReport {
                            kind: CollisionKind::from_name(&c.kind)
                                .ok_or_else(|| line_err(line, format!("unknown collision kind `{}`", c.kind)))?,
                            node: c.node,
                            participants: c
                                .participants
                                .into_iter()
                                .map(|(p, a)| {
                                    Action::from_name(&a)
                                        .map(|a| (p, a))
                                        .ok_or_else(|| line_err(line, format!("unknown action `{a}`")))
                                })
                                .collect::<Result<_, _>>()?,
                        })
                    }
                    other => return Err(line_err(line, format!("unknown outcome `{other}`"))),
                };
                return Ok(Trace {
                    initial,
                    range,
                    algorithm,
                    steps,
                    outcome,
                });
            }
            Record::Header { .. } => return Err(line_err(line, "duplicate header")),
        }
    }
    Err(line_err(0, "missing trailer record"))
}
