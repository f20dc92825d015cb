//! Built-in example scenarios. Each is an ordinary scenario document kept as
//! text (so `fixture_text` output can be saved, diffed and edited) and parsed
//! through the regular parser, which guarantees every fixture passes full
//! validation.

use fogsim_engine::Scenario;

use crate::parse::parse_scenario;

/// Requested fixture name does not exist.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fixture '{0}' (expected one of: case-a, case-b, case-c, case-d, case-2, eval-fig12)")]
pub struct UnknownFixture(pub String);

const CASE_A: &str = "\
format=1
# One active fog takes every batch and stays below its 500-request capacity.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
fog = F1 1
fog = F2 0
fog = F3 1
[schedule]
0 U1 50
0 U2 90
0 U3 40
0 U4 50
0 U5 30
0 U6 100
";

const CASE_B: &str = "\
format=1
# The final batch fills the first fog to exactly its capacity; its free bit
# drops and nothing spills over.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
fog = F1 1
fog = F2 0
fog = F3 1
[schedule]
0 U1 100
0 U2 100
0 U3 50
0 U4 50
0 U5 100
0 U6 100
";

const CASE_C: &str = "\
format=1
# The last user's batch exceeds what the first fog has left: it serves 50 of
# the 100, saturates, and forwards the remaining 50 to the next free fog, so
# two fogs serve the batch together.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
fog = F1 1
fog = F2 0
fog = F3 1
[schedule]
0 U1 100
0 U2 85
0 U3 75
0 U4 95
0 U5 95
0 U6 100
";

const CASE_D: &str = "\
format=1
# Demand beyond the whole fog layer. Requests go to the lowest-id free fog
# first, so F1 fills completely (the 20-request batch lands exactly on its
# capacity), then F3 fills the same way; the last batch gets 40 from F3 and
# its 60-request residue is the cloud's share.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
user = U7 100
user = U8 100
user = U9 100
user = U10 100
user = U11 100
user = U12 100
fog = F1 1
fog = F2 0
fog = F3 1
[schedule]
0 U1 100
0 U2 100
0 U3 85
0 U4 95
0 U5 100
0 U6 20
0 U7 85
0 U8 100
0 U9 100
0 U10 75
0 U11 100
0 U12 100
";

const CASE_2: &str = "\
format=1
# Two attackers among six users. U2 and U5 each fire 200 requests against a
# 100 requests/second ceiling (score 2000 > limit 1000); each batch is
# refused in full, the sleeping fog F2 wakes, takes the attacker, and goes
# back to sleep. F2 never serves a request, so its sum stays 0.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
fog = F1 1
fog = F2 0
fog = F3 1
[schedule]
0 U1 100
0 U2 200
0 U3 50
0 U4 50
0 U5 200
0 U6 100
";

const EVAL_FIG12: &str = "\
format=1
# Ten-second throughput run at the fog layer's combined capacity: ten clients
# at a steady 100 requests/second against two active fogs of 500 each. At
# second 4 client U10 turns hostile and fires a 200-request burst; it is
# detected, quarantined on the attack fog, and never served again, so the
# fog layer settles at 900 requests/second afterwards. The quarantined
# client keeps sending its scheduled traffic, which the attack fog absorbs.
[params]
thresh = 5000
req_size = 10
user = U1 100
user = U2 100
user = U3 100
user = U4 100
user = U5 100
user = U6 100
user = U7 100
user = U8 100
user = U9 100
user = U10 100
fog = F1 1
fog = F2 0
fog = F3 1
[workload]
demand = constant 100
duration = 10
attack = U10 4 200
";

/// Names accepted by [`builtin_fixture`], in presentation order.
pub fn fixture_names() -> [&'static str; 6] {
    ["case-a", "case-b", "case-c", "case-d", "case-2", "eval-fig12"]
}

/// The raw document text of a built-in fixture.
pub fn fixture_text(name: &str) -> Result<&'static str, UnknownFixture> {
    match name {
        "case-a" => Ok(CASE_A),
        "case-b" => Ok(CASE_B),
        "case-c" => Ok(CASE_C),
        "case-d" => Ok(CASE_D),
        "case-2" => Ok(CASE_2),
        "eval-fig12" => Ok(EVAL_FIG12),
        other => Err(UnknownFixture(other.to_string())),
    }
}

/// Parse a built-in fixture into a runnable scenario.
pub fn builtin_fixture(name: &str) -> Result<Scenario, UnknownFixture> {
    let text = fixture_text(name)?;
    Ok(parse_scenario(text).expect("built-in fixtures always validate"))
}
