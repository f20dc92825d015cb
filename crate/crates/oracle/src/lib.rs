//! Reference simulator for cross-checking.
//!
//! This is a second, independent implementation of the same per-second
//! serving model the engine implements: start-of-second resets, lowest-id
//! fog selection, per-user quota detection, capacity overflow forwarding and
//! attacker quarantine. It is written as the most literal possible
//! transcription of those procedures — plain maps keyed by raw ids, totals
//! recomputed by full loops, recursion for forwarding — and shares no code
//! with the engine. Divergence between the two on any observable is a bug in
//! one of them.
//!
//! Keep this crate dependency-free and free of engine types; the caller
//! converts its scenario into the plain [`Input`] shape.

use std::collections::BTreeMap;

/// A whole scenario in plain data: ids are raw numbers, the schedule is one
/// demand list per second starting at second 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    /// Fog data rate in megabits/second.
    pub thresh: u64,
    /// Request size in megabits.
    pub req_size: u64,
    /// (uid, max requests/second) roster.
    pub users: Vec<(u32, u64)>,
    /// (fid, initial mode bit) roster.
    pub fogs: Vec<(u32, u8)>,
    /// Demands per second in arrival order: (uid, need).
    pub seconds: Vec<Vec<(u32, u64)>>,
}

/// Observables of one simulated second.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SecondReport {
    /// Per fog: 0 after the reset, then the fog total after each batch it served.
    pub traces: BTreeMap<u32, Vec<u64>>,
    /// Per fog: requests served this second.
    pub fog_served: BTreeMap<u32, u64>,
    pub cloud: u64,
    pub absorbed: u64,
    pub rejected: u64,
    /// (uid, attack fog fid) isolation events this second, in order.
    pub blacklisted: Vec<(u32, u32)>,
}

/// Whole-run observables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub seconds: Vec<SecondReport>,
    /// Isolated attackers in isolation order.
    pub blacklist: Vec<u32>,
    pub cloud_total: u64,
}

struct Machine {
    req_size: u64,
    f_cap: u64,
    max: BTreeMap<u32, u64>,
    limit: BTreeMap<u32, u64>,
    account: BTreeMap<u32, Option<u64>>,
    mode: BTreeMap<u32, u8>,
    free: BTreeMap<u32, u8>,
    sum: BTreeMap<u32, u64>,
    count: BTreeMap<u32, BTreeMap<u32, u64>>,
    blacklist: Vec<u32>,
    host: BTreeMap<u32, u32>,
    cloud: u64,
    absorbed: u64,
    rejected: u64,
    cloud_total: u64,
    traces: BTreeMap<u32, Vec<u64>>,
    isolations: Vec<(u32, u32)>,
}

impl Machine {
    fn new(input: &Input) -> Self {
        let mut m = Machine {
            req_size: input.req_size,
            f_cap: input.thresh / input.req_size,
            max: BTreeMap::new(),
            limit: BTreeMap::new(),
            account: BTreeMap::new(),
            mode: BTreeMap::new(),
            free: BTreeMap::new(),
            sum: BTreeMap::new(),
            count: BTreeMap::new(),
            blacklist: Vec::new(),
            host: BTreeMap::new(),
            cloud: 0,
            absorbed: 0,
            rejected: 0,
            cloud_total: 0,
            traces: BTreeMap::new(),
            isolations: Vec::new(),
        };
        for (uid, max) in &input.users {
            m.max.insert(*uid, *max);
            m.limit.insert(*uid, 0);
            m.account.insert(*uid, Some(0));
        }
        for (fid, mode) in &input.fogs {
            m.mode.insert(*fid, *mode);
            m.free.insert(*fid, 1);
            m.sum.insert(*fid, 0);
            m.count.insert(*fid, BTreeMap::new());
        }
        m
    }

    fn is_blacklisted(&self, uid: u32) -> bool {
        self.blacklist.iter().any(|b| *b == uid)
    }

    fn global_assign(&mut self) {
        let uids: Vec<u32> = self.max.keys().copied().collect();
        for uid in uids {
            self.limit.insert(uid, self.max[&uid] * self.req_size);
            if !self.is_blacklisted(uid) {
                self.account.insert(uid, Some(0));
            }
        }
        let fids: Vec<u32> = self.mode.keys().copied().collect();
        for fid in fids {
            self.sum.insert(fid, 0);
            self.free.insert(fid, 1);
        }
        self.cloud = 0;
        self.absorbed = 0;
        self.rejected = 0;
        self.isolations.clear();
    }

    fn local_assign(&mut self) {
        for counts in self.count.values_mut() {
            let uids: Vec<u32> = counts.keys().copied().collect();
            for uid in uids {
                if self.blacklist.iter().any(|b| *b == uid) {
                    counts.remove(&uid);
                } else {
                    counts.insert(uid, 0);
                }
            }
        }
        self.traces.clear();
        for fid in self.mode.keys() {
            self.traces.insert(*fid, vec![0]);
        }
    }

    fn pick_fog(&self, exclude: Option<u32>) -> Option<u32> {
        for (fid, mode) in &self.mode {
            if *mode == 1 && self.free[fid] == 1 && Some(*fid) != exclude {
                return Some(*fid);
            }
        }
        None
    }

    fn send_request(&mut self, from_fog: Option<u32>, uid: u32, need: u64) {
        match self.pick_fog(from_fog) {
            Some(fid) => {
                if from_fog.is_none() {
                    self.handle_request(fid, uid, need);
                } else {
                    self.serve(fid, uid, need);
                }
            }
            None => {
                self.cloud += need;
                self.cloud_total += need;
            }
        }
    }

    fn handle_request(&mut self, fid: u32, uid: u32, need: u64) {
        match self.account[&uid] {
            None => {
                // Already quarantined: its attack fog absorbs the traffic.
                self.absorbed += need;
            }
            Some(prev) => {
                let account = prev + need;
                self.account.insert(uid, Some(account));
                let score = account * self.req_size;
                if score > self.limit[&uid] {
                    self.rejected += need;
                    self.activate_attack_fog(uid);
                } else {
                    self.serve(fid, uid, need);
                }
            }
        }
    }

    fn serve(&mut self, fid: u32, uid: u32, need: u64) {
        let counts = self.count.get_mut(&fid).unwrap();
        *counts.entry(uid).or_insert(0) += need;
        let mut total = 0;
        for value in counts.values() {
            total += *value;
        }
        if total == self.f_cap {
            self.sum.insert(fid, total);
            self.free.insert(fid, 0);
            self.traces.get_mut(&fid).unwrap().push(total);
        } else if total > self.f_cap {
            let rem = total - self.f_cap;
            let count = self.count.get_mut(&fid).unwrap();
            *count.get_mut(&uid).unwrap() -= rem;
            self.sum.insert(fid, self.f_cap);
            self.free.insert(fid, 0);
            let cap = self.f_cap;
            self.traces.get_mut(&fid).unwrap().push(cap);
            self.send_request(Some(fid), uid, rem);
        } else {
            self.sum.insert(fid, total);
            self.traces.get_mut(&fid).unwrap().push(total);
        }
    }

    fn activate_attack_fog(&mut self, uid: u32) {
        let mut sleeping = None;
        for (fid, mode) in &self.mode {
            if *mode == 0 {
                sleeping = Some(*fid);
                break;
            }
        }
        match sleeping {
            None => {
                // Nothing to wake: the batch was already counted as rejected
                // and is simply dropped.
            }
            Some(fid) => {
                self.mode.insert(fid, 1);
                self.isolate(uid, fid);
            }
        }
    }

    fn isolate(&mut self, uid: u32, fid: u32) {
        if self.is_blacklisted(uid) {
            return;
        }
        self.blacklist.push(uid);
        self.account.insert(uid, None);
        self.host.insert(uid, fid);
        self.mode.insert(fid, 0);
        self.isolations.push((uid, fid));
    }

    fn second_report(&self) -> SecondReport {
        SecondReport {
            traces: self.traces.clone(),
            fog_served: self.sum.clone(),
            cloud: self.cloud,
            absorbed: self.absorbed,
            rejected: self.rejected,
            blacklisted: self.isolations.clone(),
        }
    }
}

/// Run the reference machine over the whole schedule.
pub fn simulate(input: &Input) -> Report {
    let mut machine = Machine::new(input);
    let mut seconds = Vec::new();
    for demands in &input.seconds {
        machine.global_assign();
        machine.local_assign();
        for (uid, need) in demands {
            machine.send_request(None, *uid, *need);
        }
        seconds.push(machine.second_report());
    }
    Report {
        seconds,
        blacklist: machine.blacklist.clone(),
        cloud_total: machine.cloud_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_input(seconds: Vec<Vec<(u32, u64)>>) -> Input {
        Input {
            thresh: 5000,
            req_size: 10,
            users: (1..=6).map(|uid| (uid, 100)).collect(),
            fogs: vec![(1, 1), (2, 0), (3, 1)],
            seconds,
        }
    }

    #[test]
    fn below_capacity_batch_sequence() {
        let input = reference_input(vec![vec![
            (1, 50),
            (2, 90),
            (3, 40),
            (4, 50),
            (5, 30),
            (6, 100),
        ]]);
        let report = simulate(&input);
        assert_eq!(
            report.seconds[0].traces[&1],
            vec![0, 50, 140, 180, 230, 260, 360]
        );
        assert_eq!(report.seconds[0].fog_served[&3], 0);
        assert_eq!(report.cloud_total, 0);
    }

    #[test]
    fn overflow_splits_across_fogs() {
        let input = reference_input(vec![vec![
            (1, 100),
            (2, 85),
            (3, 75),
            (4, 95),
            (5, 95),
            (6, 100),
        ]]);
        let report = simulate(&input);
        assert_eq!(report.seconds[0].traces[&1].last(), Some(&500));
        assert_eq!(report.seconds[0].traces[&3], vec![0, 50]);
    }

    #[test]
    fn quota_breach_blacklists_without_serving() {
        let input = reference_input(vec![
            vec![(1, 100), (2, 200)],
            vec![(2, 50), (1, 10)],
        ]);
        let report = simulate(&input);
        assert_eq!(report.blacklist, vec![2]);
        assert_eq!(report.seconds[0].rejected, 200);
        assert_eq!(report.seconds[0].blacklisted, vec![(2, 2)]);
        // The next second the attacker is absorbed, not served.
        assert_eq!(report.seconds[1].absorbed, 50);
        assert_eq!(report.seconds[1].fog_served[&1], 10);
    }
}
