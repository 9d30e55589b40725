//! Result records shared by the densest-subgraph and max-cut solvers.

use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::set::VertexSet;

/// Algorithm tags as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Greedy,
    BlackboxPeel,
    BlackboxSdp,
    BlackboxGreedy,
    BlackboxLocalRandom,
    BlackboxLocalGreedy,
    Blackbox,
    Sdp,
    Exhaustive,
    Random,
    Init,
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Algorithm::Greedy,
        Algorithm::BlackboxPeel,
        Algorithm::BlackboxSdp,
        Algorithm::BlackboxGreedy,
        Algorithm::BlackboxLocalRandom,
        Algorithm::BlackboxLocalGreedy,
        Algorithm::Blackbox,
        Algorithm::Sdp,
        Algorithm::Exhaustive,
        Algorithm::Random,
        Algorithm::Init,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::BlackboxPeel => "blackbox-peel",
            Algorithm::BlackboxSdp => "blackbox-sdp",
            Algorithm::BlackboxGreedy => "blackbox-greedy",
            Algorithm::BlackboxLocalRandom => "blackbox-local-random",
            Algorithm::BlackboxLocalGreedy => "blackbox-local-greedy",
            Algorithm::Blackbox => "blackbox",
            Algorithm::Sdp => "sdp",
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::Random => "random",
            Algorithm::Init => "init",
        }
    }

    /// Whether the algorithm solves a semidefinite program.
    pub fn uses_sdp(self) -> bool {
        matches!(self, Algorithm::Sdp | Algorithm::BlackboxSdp)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}'"))
    }
}

impl Serialize for Algorithm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Annotations attached to a result.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    /// The SDP solver hit its iteration limit before meeting tolerance.
    Unconverged,
    /// The budget lies outside the regime covered by the approximation
    /// guarantee; the answer is still feasible.
    OutOfRegime,
    Skipped(String),
    Failed(String),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Unconverged => f.write_str("unconverged"),
            Flag::OutOfRegime => f.write_str("out-of-regime"),
            Flag::Skipped(why) => write!(f, "skipped:{why}"),
            Flag::Failed(why) => write!(f, "error:{why}"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct DensestResult {
    pub chosen: VertexSet,
    pub final_set: VertexSet,
    pub density_before: f64,
    pub density_after: f64,
    pub algorithm: Algorithm,
    #[serde(rename = "wall_time_s", serialize_with = "seconds")]
    pub wall_time: Duration,
    pub flags: Vec<Flag>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutResult {
    pub chosen: VertexSet,
    pub final_set: VertexSet,
    pub cut_before: f64,
    pub cut_after: f64,
    pub algorithm: Algorithm,
    #[serde(rename = "wall_time_s", serialize_with = "seconds")]
    pub wall_time: Duration,
    pub flags: Vec<Flag>,
}
