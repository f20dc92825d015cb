//! Strict line-oriented scenario parser. Every diagnostic carries the line
//! number it came from; unknown keys and sections are rejected.

use std::collections::BTreeSet;
use std::str::FromStr;

use fogsim_core::{compute_f_cap, FogId, FogMode, FogSpec, SimParams, UserId, UserSpec};
use fogsim_engine::{
    generate_workload, AttackInjection, DemandModel, Scenario, Tick, WorkloadSpec,
};

/// A scenario file problem, pinned to a line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

// Magnitude caps for file inputs. They keep every product and running total
// the simulator computes comfortably inside u64 and stop a hostile file from
// requesting a billion-second run.
const MAX_RATE: u64 = 1_000_000_000_000; // thresh, Mb/s
const MAX_REQ_SIZE: u64 = 1_000_000; // Mb
const MAX_REQUESTS: u64 = 1_000_000_000; // needs and per-user ceilings
const MAX_SECONDS: u64 = 1_000_000;

fn bounded(value: u64, max: u64, what: &str, line: usize) -> Result<u64, ParseError> {
    if value > max {
        return err(line, format!("{what} {value} exceeds the supported maximum of {max}"));
    }
    Ok(value)
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Parse a scenario document. Documents with a `[workload]` section are
/// expanded into an explicit schedule using the document's seed.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    parse_scenario_seeded(text, None)
}

/// Like [`parse_scenario`], with an optional seed override for `[workload]`
/// documents (explicit `[schedule]` documents keep their schedule; only the
/// recorded seed changes).
pub fn parse_scenario_seeded(
    text: &str,
    seed_override: Option<u64>,
) -> Result<Scenario, ParseError> {
    let doc = Document::read(text)?;
    doc.into_scenario(seed_override)
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    Preamble,
    Params,
    Schedule,
    Workload,
}

#[derive(Default)]
struct Document {
    thresh: Option<(u64, usize)>,
    req_size: Option<(u64, usize)>,
    seed: Option<u64>,
    users: Vec<UserSpec>,
    fogs: Vec<FogSpec>,
    params_line: usize,
    schedule: Vec<(u64, UserId, u64, usize)>,
    schedule_line: Option<usize>,
    demand: Option<DemandModel>,
    duration: Option<u64>,
    attacks: Vec<(AttackInjection, usize)>,
    workload_line: Option<usize>,
}

fn parse_num(token: &str, line: usize, what: &str) -> Result<u64, ParseError> {
    token
        .parse::<u64>()
        .map_err(|_| ParseError {
            line,
            message: format!("{what} must be a non-negative integer, got '{token}'"),
        })
}

fn parse_token<T: FromStr>(token: &str, line: usize) -> Result<T, ParseError>
where
    T::Err: std::fmt::Display,
{
    token.parse::<T>().map_err(|e| ParseError {
        line,
        message: e.to_string(),
    })
}

impl Document {
    fn read(text: &str) -> Result<Self, ParseError> {
        let mut doc = Document::default();
        let mut section = Section::Preamble;
        let mut saw_format = false;
        let mut seen_users = BTreeSet::new();
        let mut seen_fogs = BTreeSet::new();
        let mut last_second: Option<u64> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !saw_format {
                match trimmed.strip_prefix("format=") {
                    Some("1") => {
                        saw_format = true;
                        continue;
                    }
                    Some(other) => return err(line, format!("unsupported format version '{other}'")),
                    None => return err(line, "expected 'format=1' declaration"),
                }
            }
            match trimmed {
                "[params]" => {
                    if section != Section::Preamble {
                        return err(line, "[params] must be the first section");
                    }
                    section = Section::Params;
                    doc.params_line = line;
                    continue;
                }
                "[schedule]" => {
                    if section == Section::Preamble {
                        return err(line, "[params] must come before [schedule]");
                    }
                    if doc.schedule_line.is_some() || doc.workload_line.is_some() {
                        return err(line, "only one [schedule] or [workload] section is allowed");
                    }
                    section = Section::Schedule;
                    doc.schedule_line = Some(line);
                    continue;
                }
                "[workload]" => {
                    if section == Section::Preamble {
                        return err(line, "[params] must come before [workload]");
                    }
                    if doc.schedule_line.is_some() || doc.workload_line.is_some() {
                        return err(line, "only one [schedule] or [workload] section is allowed");
                    }
                    section = Section::Workload;
                    doc.workload_line = Some(line);
                    continue;
                }
                other if other.starts_with('[') => {
                    return err(line, format!("unknown section '{other}'"));
                }
                _ => {}
            }
            match section {
                Section::Preamble => return err(line, "content before any section"),
                Section::Params => doc.read_params_line(trimmed, line, &mut seen_users, &mut seen_fogs)?,
                Section::Schedule => doc.read_schedule_line(trimmed, line, &mut last_second)?,
                Section::Workload => doc.read_workload_line(trimmed, line)?,
            }
        }
        if !saw_format {
            return err(1, "expected 'format=1' declaration");
        }
        if doc.params_line == 0 {
            return err(1, "missing [params] section");
        }
        Ok(doc)
    }

    fn read_params_line(
        &mut self,
        trimmed: &str,
        line: usize,
        seen_users: &mut BTreeSet<UserId>,
        seen_fogs: &mut BTreeSet<FogId>,
    ) -> Result<(), ParseError> {
        let (key, value) = split_key_value(trimmed, line)?;
        match key {
            "thresh" => {
                if self.thresh.is_some() {
                    return err(line, "duplicate key 'thresh'");
                }
                let v = bounded(parse_num(value, line, "thresh")?, MAX_RATE, "thresh", line)?;
                self.thresh = Some((v, line));
            }
            "req_size" => {
                if self.req_size.is_some() {
                    return err(line, "duplicate key 'req_size'");
                }
                let v = bounded(
                    parse_num(value, line, "req_size")?,
                    MAX_REQ_SIZE,
                    "req_size",
                    line,
                )?;
                self.req_size = Some((v, line));
            }
            "seed" => {
                if self.seed.is_some() {
                    return err(line, "duplicate key 'seed'");
                }
                self.seed = Some(parse_num(value, line, "seed")?);
            }
            "user" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return err(line, "expected 'user = U<n> <max requests/second>'");
                }
                let uid: UserId = parse_token(parts[0], line)?;
                let max_rps = bounded(
                    parse_num(parts[1], line, "user ceiling")?,
                    MAX_REQUESTS,
                    "user ceiling",
                    line,
                )?;
                if !seen_users.insert(uid) {
                    return err(line, format!("duplicate user {uid}"));
                }
                self.users.push(UserSpec { uid, max_rps });
            }
            "fog" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return err(line, "expected 'fog = F<n> <mode bit>'");
                }
                let fid: FogId = parse_token(parts[0], line)?;
                let bit = parse_num(parts[1], line, "mode bit")?;
                let mode = u8::try_from(bit)
                    .ok()
                    .and_then(FogMode::from_bit)
                    .ok_or_else(|| ParseError {
                        line,
                        message: format!("mode bit must be 0 or 1, got '{bit}'"),
                    })?;
                if !seen_fogs.insert(fid) {
                    return err(line, format!("duplicate fog {fid}"));
                }
                self.fogs.push(FogSpec { fid, mode });
            }
            other => return err(line, format!("unknown key '{other}' in [params]")),
        }
        Ok(())
    }

    fn read_schedule_line(
        &mut self,
        trimmed: &str,
        line: usize,
        last_second: &mut Option<u64>,
    ) -> Result<(), ParseError> {
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 3 {
            return err(line, "expected '<second> <uid> <need>'");
        }
        let second = bounded(parse_num(parts[0], line, "second")?, MAX_SECONDS, "second", line)?;
        let uid: UserId = parse_token(parts[1], line)?;
        let need = bounded(parse_num(parts[2], line, "need")?, MAX_REQUESTS, "need", line)?;
        if let Some(prev) = *last_second {
            if second < prev {
                return err(
                    line,
                    format!("schedule seconds must not decrease (second {second} after {prev})"),
                );
            }
        }
        *last_second = Some(second);
        if need == 0 {
            return err(line, format!("demand for {uid} must be at least 1"));
        }
        if !self.users.iter().any(|u| u.uid == uid) {
            return err(line, format!("unknown user {uid}"));
        }
        self.schedule.push((second, uid, need, line));
        Ok(())
    }

    fn read_workload_line(&mut self, trimmed: &str, line: usize) -> Result<(), ParseError> {
        let (key, value) = split_key_value(trimmed, line)?;
        match key {
            "demand" => {
                if self.demand.is_some() {
                    return err(line, "duplicate key 'demand'");
                }
                let parts: Vec<&str> = value.split_whitespace().collect();
                self.demand = Some(match parts.as_slice() {
                    ["constant", n] => DemandModel::Constant(bounded(
                        parse_num(n, line, "demand")?,
                        MAX_REQUESTS,
                        "demand",
                        line,
                    )?),
                    ["uniform", lo, hi] => DemandModel::Uniform {
                        lo: bounded(
                            parse_num(lo, line, "demand low bound")?,
                            MAX_REQUESTS,
                            "demand low bound",
                            line,
                        )?,
                        hi: bounded(
                            parse_num(hi, line, "demand high bound")?,
                            MAX_REQUESTS,
                            "demand high bound",
                            line,
                        )?,
                    },
                    _ => {
                        return err(
                            line,
                            "expected 'demand = constant <n>' or 'demand = uniform <lo> <hi>'",
                        )
                    }
                });
            }
            "duration" => {
                if self.duration.is_some() {
                    return err(line, "duplicate key 'duration'");
                }
                self.duration = Some(bounded(
                    parse_num(value, line, "duration")?,
                    MAX_SECONDS,
                    "duration",
                    line,
                )?);
            }
            "attack" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 3 {
                    return err(line, "expected 'attack = <uid> <second> <need>'");
                }
                let uid: UserId = parse_token(parts[0], line)?;
                let second = parse_num(parts[1], line, "attack second")?;
                let need = bounded(
                    parse_num(parts[2], line, "attack need")?,
                    MAX_REQUESTS,
                    "attack need",
                    line,
                )?;
                self.attacks.push((AttackInjection { uid, second, need }, line));
            }
            other => return err(line, format!("unknown key '{other}' in [workload]")),
        }
        Ok(())
    }

    fn into_scenario(self, seed_override: Option<u64>) -> Result<Scenario, ParseError> {
        let (thresh, thresh_line) = match self.thresh {
            Some(v) => v,
            None => return err(self.params_line, "missing key 'thresh'"),
        };
        let (req_size, _) = match self.req_size {
            Some(v) => v,
            None => return err(self.params_line, "missing key 'req_size'"),
        };
        if let Err(e) = compute_f_cap(thresh, req_size) {
            return err(thresh_line, e.to_string());
        }
        let params = SimParams {
            thresh,
            req_size,
            users: self.users,
            fogs: self.fogs,
        };
        if let Err(e) = params.validate() {
            return err(self.params_line, e.to_string());
        }
        let seed = seed_override.or(self.seed).unwrap_or(0);

        let scenario = match (self.schedule_line, self.workload_line) {
            (Some(section_line), None) => {
                if self.schedule.is_empty() {
                    return err(section_line, "schedule section is empty");
                }
                let mut ticks: Vec<Tick> = Vec::new();
                for (second, uid, need, _) in &self.schedule {
                    match ticks.last_mut() {
                        Some(tick) if tick.second == *second => tick.demands.push((*uid, *need)),
                        _ => ticks.push(Tick {
                            second: *second,
                            demands: vec![(*uid, *need)],
                        }),
                    }
                }
                Scenario {
                    params,
                    schedule: ticks,
                    seed,
                }
            }
            (None, Some(section_line)) => {
                let Some(demand) = self.demand else {
                    return err(section_line, "missing key 'demand'");
                };
                let Some(duration) = self.duration else {
                    return err(section_line, "missing key 'duration'");
                };
                let spec = WorkloadSpec {
                    params,
                    demand,
                    duration,
                    attacks: Vec::new(),
                };
                if let Err(e) = spec.validate() {
                    return err(section_line, e.to_string());
                }
                let mut spec = spec;
                for (attack, line) in &self.attacks {
                    let mut probe = spec.clone();
                    probe.attacks.push(*attack);
                    if let Err(e) = probe.validate() {
                        return err(*line, e.to_string());
                    }
                    spec.attacks.push(*attack);
                }
                match generate_workload(&spec, seed) {
                    Ok(s) => s,
                    Err(e) => return err(section_line, e.to_string()),
                }
            }
            (None, None) => {
                return err(self.params_line, "missing [schedule] or [workload] section")
            }
            (Some(_), Some(line)) => {
                return err(line, "only one [schedule] or [workload] section is allowed")
            }
        };
        if let Err(e) = scenario.validate() {
            return err(self.params_line, e.to_string());
        }
        Ok(scenario)
    }
}

fn split_key_value(trimmed: &str, line: usize) -> Result<(&str, &str), ParseError> {
    match trimmed.split_once('=') {
        Some((key, value)) => Ok((key.trim(), value.trim())),
        None => err(line, format!("expected 'key = value', got '{trimmed}'")),
    }
}
