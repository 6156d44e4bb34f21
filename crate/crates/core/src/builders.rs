//! Constructors that turn domain data into networks: mass points on a line
//! or in a normed space, equidistant groups, roll-call votes, and ranked
//! preference profiles.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Network, ValidateOptions};

/// Largest bill count accepted by [`build_vote_hypercube`] (2^k nodes).
pub const MAX_BILLS: usize = 20;
/// Largest alternative count accepted by [`build_preference_kemeny`] (m! nodes).
pub const MAX_ALTERNATIVES: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassPoint {
    pub position: Vec<f64>,
    pub mass: f64,
}

/// A finite distribution over points of `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassPoints {
    points: Vec<MassPoint>,
}

impl MassPoints {
    pub fn new(points: Vec<MassPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidPoints("no points".into()));
        };
        let dim = first.position.len();
        if dim == 0 {
            return Err(Error::InvalidPoints("zero-dimensional position".into()));
        }
        for p in &points {
            if p.position.len() != dim {
                return Err(Error::InvalidPoints(format!(
                    "mixed dimensions {} and {}",
                    dim,
                    p.position.len()
                )));
            }
            if p.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPoints("non-finite coordinate".into()));
            }
            if !(p.mass >= 0.0 && p.mass.is_finite()) {
                return Err(Error::NegativeMass {
                    id: point_id(&p.position),
                    mass: p.mass,
                });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q.position == p.position) {
                return Err(Error::DuplicatePosition(point_id(&p.position)));
            }
        }
        Ok(MassPoints { points })
    }

    /// Convenience constructor for one-dimensional `(x, mass)` pairs.
    pub fn on_line(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|&(x, mass)| MassPoint {
                    position: vec![x],
                    mass,
                })
                .collect(),
        )
    }

    pub fn points(&self) -> &[MassPoint] {
        &self.points
    }

    pub fn dimension(&self) -> usize {
        self.points[0].position.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.points.iter().map(|p| p.mass).sum()
    }
}

/// Node id for a position: `x` in one dimension, `(x,y,...)` otherwise.
pub fn point_id(position: &[f64]) -> String {
    if position.len() == 1 {
        position[0].to_string()
    } else {
        let parts: Vec<String> = position.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Manhattan,
    Euclidean,
    Chebyshev,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::Manhattan => diffs.sum(),
            Norm::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// Roll-call data: one row of binary votes per voter.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteMatrix {
    voters: Vec<String>,
    bills: usize,
    entries: Vec<Vec<bool>>,
    party: Option<Vec<String>>,
}

impl VoteMatrix {
    pub fn new(
        voters: Vec<String>,
        entries: Vec<Vec<bool>>,
        party: Option<Vec<String>>,
    ) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::InvalidVotes("no voters".into()));
        }
        if voters.len() != entries.len() {
            return Err(Error::InvalidVotes(format!(
                "{} voters but {} vote rows",
                voters.len(),
                entries.len()
            )));
        }
        let bills = entries[0].len();
        if bills == 0 {
            return Err(Error::InvalidVotes("no bills".into()));
        }
        if let Some(i) = entries.iter().position(|r| r.len() != bills) {
            return Err(Error::InvalidVotes(format!(
                "voter `{}` has {} votes, expected {bills}",
                voters[i],
                entries[i].len()
            )));
        }
        for (i, v) in voters.iter().enumerate() {
            if voters[..i].contains(v) {
                return Err(Error::InvalidVotes(format!("duplicate voter `{v}`")));
            }
        }
        if let Some(p) = &party {
            if p.len() != voters.len() {
                return Err(Error::InvalidVotes("party column length mismatch".into()));
            }
        }
        Ok(VoteMatrix {
            voters,
            bills,
            entries,
            party,
        })
    }

    pub fn voters(&self) -> &[String] {
        &self.voters
    }

    pub fn bills(&self) -> usize {
        self.bills
    }

    pub fn entries(&self) -> &[Vec<bool>] {
        &self.entries
    }

    pub fn party(&self) -> Option<&[String]> {
        self.party.as_deref()
    }

    fn disagreements(&self, i: usize, j: usize) -> usize {
        self.entries[i]
            .iter()
            .zip(&self.entries[j])
            .filter(|(a, b)| a != b)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ballot {
    pub ranking: Vec<String>,
    pub count: f64,
}

/// Ranked ballots over a fixed set of alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceProfile {
    alternatives: Vec<String>,
    ballots: Vec<Ballot>,
}

impl PreferenceProfile {
    pub fn new(alternatives: Vec<String>, ballots: Vec<Ballot>) -> Result<Self> {
        if alternatives.len() < 2 {
            return Err(Error::InvalidProfile("need at least two alternatives".into()));
        }
        for (i, a) in alternatives.iter().enumerate() {
            if alternatives[..i].contains(a) {
                return Err(Error::InvalidProfile(format!("duplicate alternative `{a}`")));
            }
        }
        for b in &ballots {
            let mut sorted = b.ranking.clone();
            sorted.sort();
            let mut expected = alternatives.clone();
            expected.sort();
            if sorted != expected {
                return Err(Error::InvalidProfile(format!(
                    "ranking `{}` is not a permutation of the alternatives",
                    b.ranking.join(">")
                )));
            }
            if !(b.count > 0.0 && b.count.is_finite()) {
                return Err(Error::InvalidProfile(format!(
                    "ballot `{}` has non-positive count {}",
                    b.ranking.join(">"),
                    b.count
                )));
            }
        }
        Ok(PreferenceProfile {
            alternatives,
            ballots,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn total_count(&self) -> f64 {
        self.ballots.iter().map(|b| b.count).sum()
    }
}

/// How a tied party majority on a bill enters the party agreement share.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// The tied bill stays in the denominator but can never be a common
    /// position.
    #[default]
    StrictMajority,
    /// Bills on which either party is tied are dropped from the denominator.
    ExcludeBill,
}

fn connected(nodes: Vec<(String, f64)>, edges: Vec<(usize, usize, f64)>, err: Error) -> Result<Network> {
    Network::new(nodes, edges, ValidateOptions::default()).map_err(|e| match e {
        Error::Disconnected { .. } => err,
        other => other,
    })
}

/// Discrete distribution on the real line as a path: consecutive points
/// (by position) are linked with weight equal to their gap.
pub fn build_line(points: &MassPoints) -> Result<Network> {
    if points.dimension() != 1 {
        return Err(Error::InvalidPoints(format!(
            "line builder needs 1-D positions, got {}-D",
            points.dimension()
        )));
    }
    let mut sorted: Vec<&MassPoint> = points.points().iter().collect();
    sorted.sort_by(|a, b| a.position[0].total_cmp(&b.position[0]));
    let nodes = sorted
        .iter()
        .map(|p| (point_id(&p.position), p.mass))
        .collect();
    let edges = sorted
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, i + 1, w[1].position[0] - w[0].position[0]))
        .collect();
    Network::new(nodes, edges, ValidateOptions::default())
}

/// Groups at mutual distance 1: the unit-weight complete graph.
pub fn build_complete_uniform(masses: &[f64]) -> Result<Network> {
    if masses.len() < 2 {
        return Err(Error::FewerThanTwoGroups);
    }
    let nodes = masses
        .iter()
        .enumerate()
        .map(|(i, &m)| (format!("g{}", i + 1), m))
        .collect();
    let n = masses.len();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j, 1.0)))
        .collect();
    Network::new(nodes, edges, ValidateOptions::default())
}

/// Complete graph on the points with the chosen norm as edge weight.
pub fn build_lattice(points: &MassPoints, norm: Norm) -> Result<Network> {
    let pts = points.points();
    let nodes = pts
        .iter()
        .map(|p| (point_id(&p.position), p.mass))
        .collect();
    let mut edges = Vec::with_capacity(pts.len() * (pts.len().saturating_sub(1)) / 2);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            edges.push((i, j, norm.distance(&pts[i].position, &pts[j].position)));
        }
    }
    Network::new(nodes, edges, ValidateOptions::default())
}

fn bitstring(code: usize, bills: usize) -> String {
    (0..bills)
        .map(|b| {
            if code >> (bills - 1 - b) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// The `{0,1}^k` hypercube of vote combinations; node mass is the number of
/// voters with that exact vote vector.
pub fn build_vote_hypercube(votes: &VoteMatrix) -> Result<Network> {
    build_vote_hypercube_with_limit(votes, MAX_BILLS)
}

pub fn build_vote_hypercube_with_limit(votes: &VoteMatrix, max_bills: usize) -> Result<Network> {
    let k = votes.bills();
    if k > max_bills || k >= usize::BITS as usize {
        return Err(Error::TooManyBills {
            bills: k,
            limit: max_bills,
        });
    }
    let size = 1usize << k;
    let mut masses = vec![0.0; size];
    for row in votes.entries() {
        let code = row.iter().fold(0usize, |acc, &v| (acc << 1) | v as usize);
        masses[code] += 1.0;
    }
    let nodes = masses
        .into_iter()
        .enumerate()
        .map(|(code, m)| (bitstring(code, k), m))
        .collect();
    let mut edges = Vec::with_capacity(size * k / 2);
    for code in 0..size {
        for b in 0..k {
            let other = code ^ (1 << b);
            if code < other {
                edges.push((code, other, 1.0));
            }
        }
    }
    Network::new(nodes, edges, ValidateOptions::default())
}

/// Voters as unit-mass nodes; the edge weight is the share of bills on which
/// two voters differ, and voters who never agree are not linked.
pub fn build_representatives(votes: &VoteMatrix) -> Result<Network> {
    let n = votes.voters().len();
    let k = votes.bills();
    let nodes = votes.voters().iter().map(|v| (v.clone(), 1.0)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = votes.disagreements(i, j);
            if diff < k {
                edges.push((i, j, diff as f64 / k as f64));
            }
        }
    }
    connected(nodes, edges, Error::DisconnectedAgreementGraph)
}

/// Voters linked with unit weight whenever they co-sponsored a bill.
pub fn build_cosponsorship(sponsorships: &VoteMatrix) -> Result<Network> {
    let n = sponsorships.voters().len();
    let rows = sponsorships.entries();
    let nodes = sponsorships
        .voters()
        .iter()
        .map(|v| (v.clone(), 1.0))
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i].iter().zip(&rows[j]).any(|(&a, &b)| a && b) {
                edges.push((i, j, 1.0));
            }
        }
    }
    Network::new(nodes, edges, ValidateOptions::default())
}

/// Party majority position per bill; `None` on a tie.
fn majority_positions(votes: &VoteMatrix, members: &[usize]) -> Vec<Option<bool>> {
    (0..votes.bills())
        .map(|b| {
            let yes = members.iter().filter(|&&i| votes.entries()[i][b]).count();
            let no = members.len() - yes;
            match yes.cmp(&no) {
                std::cmp::Ordering::Greater => Some(true),
                std::cmp::Ordering::Less => Some(false),
                std::cmp::Ordering::Equal => None,
            }
        })
        .collect()
}

/// Parties as nodes weighted by seat count. The edge weight is
/// `1 - (share of bills on which both party majorities take the same side)`;
/// parties with no common majority position are not linked.
pub fn build_parties(votes: &VoteMatrix, tie_rule: TieRule) -> Result<Network> {
    let party = votes
        .party()
        .ok_or_else(|| Error::InvalidVotes("no party column".into()))?;
    let mut order: Vec<String> = Vec::new();
    for p in party {
        if !order.contains(p) {
            order.push(p.clone());
        }
    }
    build_parties_with(votes, &order, tie_rule)
}

/// Like [`build_parties`] with an explicit party list (and node order).
pub fn build_parties_with(
    votes: &VoteMatrix,
    parties: &[String],
    tie_rule: TieRule,
) -> Result<Network> {
    let party = votes
        .party()
        .ok_or_else(|| Error::InvalidVotes("no party column".into()))?;
    if parties.len() < 2 {
        return Err(Error::FewerThanTwoGroups);
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); parties.len()];
    for (i, p) in party.iter().enumerate() {
        let slot = parties
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::InvalidVotes(format!("voter party `{p}` not in party list")))?;
        members[slot].push(i);
    }
    if let Some(empty) = members.iter().position(Vec::is_empty) {
        return Err(Error::EmptyParty(parties[empty].clone()));
    }
    let positions: Vec<Vec<Option<bool>>> = members
        .iter()
        .map(|m| majority_positions(votes, m))
        .collect();
    let nodes = parties
        .iter()
        .zip(&members)
        .map(|(p, m)| (p.clone(), m.len() as f64))
        .collect();
    let mut edges = Vec::new();
    for a in 0..parties.len() {
        for b in (a + 1)..parties.len() {
            let mut common = 0usize;
            let mut counted = 0usize;
            for (x, y) in positions[a].iter().zip(&positions[b]) {
                match (x, y) {
                    (Some(x), Some(y)) => {
                        counted += 1;
                        if x == y {
                            common += 1;
                        }
                    }
                    _ => {
                        if tie_rule == TieRule::StrictMajority {
                            counted += 1;
                        }
                    }
                }
            }
            if common > 0 {
                edges.push((a, b, 1.0 - common as f64 / counted as f64));
            }
        }
    }
    connected(nodes, edges, Error::DisconnectedPartyGraph)
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `m!` rankings, linked with unit weight when they differ by one
/// adjacent transposition, so geodesic distance is the Kemeny distance.
pub fn build_preference_kemeny(profile: &PreferenceProfile) -> Result<Network> {
    build_preference_kemeny_with_limit(profile, MAX_ALTERNATIVES)
}

pub fn build_preference_kemeny_with_limit(
    profile: &PreferenceProfile,
    max_alternatives: usize,
) -> Result<Network> {
    let alts = profile.alternatives();
    let m = alts.len();
    if m > max_alternatives {
        return Err(Error::TooManyAlternatives {
            alternatives: m,
            limit: max_alternatives,
        });
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let alt_index: HashMap<&str, usize> = alts
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let mut masses = vec![0.0; perms.len()];
    for b in profile.ballots() {
        let key: Vec<usize> = b.ranking.iter().map(|a| alt_index[a.as_str()]).collect();
        masses[index[key.as_slice()]] += b.count;
    }
    let mut edges = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        let mut q = p.clone();
        for pos in 0..m - 1 {
            q.swap(pos, pos + 1);
            let j = index[q.as_slice()];
            if i < j {
                edges.push((i, j, 1.0));
            }
            q.swap(pos, pos + 1);
        }
    }
    let nodes = perms
        .iter()
        .zip(masses)
        .map(|(p, mass)| {
            let names: Vec<&str> = p.iter().map(|&a| alts[a].as_str()).collect();
            (names.join(">"), mass)
        })
        .collect();
    Network::new(nodes, edges, ValidateOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::geodesic_distances;
    use crate::measures::{polarization, MeasureParams};

    fn votes(rows: &[&str], party: Option<&[&str]>) -> VoteMatrix {
        VoteMatrix::new(
            (1..=rows.len()).map(|i| format!("R{i}")).collect(),
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
            party.map(|p| p.iter().map(|s| s.to_string()).collect()),
        )
        .unwrap()
    }

    /// Three bills, eight representatives, column per representative.
    fn matrix_one(party: Option<&[&str]>) -> VoteMatrix {
        votes(
            &["100", "100", "100", "010", "011", "011", "101", "111"],
            party,
        )
    }

    fn p1(net: &Network) -> f64 {
        polarization(net, &MeasureParams::default(), &geodesic_distances(net))
            .unwrap()
            .value
    }

    #[test]
    fn line_builder() {
        let two = build_line(&MassPoints::on_line(&[(0.0, 0.5), (1.0, 0.5)]).unwrap()).unwrap();
        assert_eq!(two.edges().len(), 1);
        assert_eq!(two.edges()[0].weight, 1.0);
        assert_eq!(p1(&two), 0.25);

        let three =
            build_line(&MassPoints::on_line(&[(3.0, 1.0), (0.0, 1.0), (1.0, 1.0)]).unwrap())
                .unwrap();
        assert_eq!(three.ids(), ["0", "1", "3"]);
        let w: Vec<f64> = three.edges().iter().map(|e| e.weight).collect();
        assert_eq!(w, [1.0, 2.0]);
        assert_eq!(geodesic_distances(&three).get(0, 2), 3.0);

        assert!(matches!(
            MassPoints::on_line(&[(1.0, 1.0), (1.0, 2.0)]),
            Err(Error::DuplicatePosition(_))
        ));
    }

    #[test]
    fn complete_builder() {
        let two = build_complete_uniform(&[1.0, 1.0]).unwrap();
        assert_eq!(geodesic_distances(&two).get(0, 1), 1.0);
        assert_eq!(p1(&build_complete_uniform(&[1.0, 1.0, 1.0]).unwrap()), 6.0);
        assert_eq!(p1(&build_complete_uniform(&[2.0, 1.0, 1.0]).unwrap()), 14.0);
        assert_eq!(
            build_complete_uniform(&[1.0]),
            Err(Error::FewerThanTwoGroups)
        );
    }

    #[test]
    fn hypercube_from_matrix_one() {
        let net = build_vote_hypercube(&matrix_one(None)).unwrap();
        assert_eq!(net.len(), 8);
        let expected = [
            ("000", 0.0),
            ("001", 0.0),
            ("010", 1.0),
            ("011", 2.0),
            ("100", 3.0),
            ("101", 1.0),
            ("110", 0.0),
            ("111", 1.0),
        ];
        for (id, m) in expected {
            assert_eq!(net.mass_of(id), Some(m), "{id}");
        }
        assert_eq!(net.total_mass(), 8.0);
        let dm = geodesic_distances(&net);
        assert_eq!(dm.get(0, 7), 3.0);
    }

    #[test]
    fn hypercube_single_bill_unanimous() {
        let net = build_vote_hypercube(&votes(&["1", "1", "1"], None)).unwrap();
        assert_eq!(net.masses(), [0.0, 3.0]);
        assert_eq!(p1(&net), 0.0);
    }

    #[test]
    fn hypercube_guard() {
        let wide = votes(&["1".repeat(21).as_str()], None);
        assert_eq!(
            build_vote_hypercube(&wide),
            Err(Error::TooManyBills {
                bills: 21,
                limit: 20
            })
        );
        assert_eq!(
            build_vote_hypercube_with_limit(&votes(&["101"], None), 2),
            Err(Error::TooManyBills { bills: 3, limit: 2 })
        );
    }

    #[test]
    fn representatives_from_matrix_one() {
        let net = build_representatives(&matrix_one(None)).unwrap();
        let (r1, r2, r4, r7) = (0, 1, 3, 6);
        assert_eq!(net.edge_weight(r1, r4), Some(2.0 / 3.0));
        assert_eq!(net.edge_weight(r4, r7), None);
        assert_eq!(net.edge_weight(r1, r2), Some(0.0));
        assert!(net.masses().iter().all(|&m| m == 1.0));
        let dm = geodesic_distances(&net);
        assert!(dm.get(r4, r7).is_finite());
    }

    #[test]
    fn representatives_disconnected() {
        assert_eq!(
            build_representatives(&votes(&["10", "01"], None)),
            Err(Error::DisconnectedAgreementGraph)
        );
    }

    #[test]
    fn parties_identical_and_opposite() {
        let same = votes(&["10", "10", "10", "10"], Some(&["A", "A", "B", "B"]));
        let net = build_parties(&same, TieRule::StrictMajority).unwrap();
        assert_eq!(net.edge_weight(0, 1), Some(0.0));
        assert_eq!(net.masses(), [2.0, 2.0]);

        let opposite = votes(&["10", "10", "01", "01"], Some(&["A", "A", "B", "B"]));
        assert_eq!(
            build_parties(&opposite, TieRule::StrictMajority),
            Err(Error::DisconnectedPartyGraph)
        );
    }

    #[test]
    fn parties_from_matrix_one() {
        // Party A (R1-R4) majorities: 1,0,0. Party B (R5-R8): tie,1,1.
        // No bill has a common majority position under either tie rule.
        let party = ["A", "A", "A", "A", "B", "B", "B", "B"];
        let m = matrix_one(Some(&party));
        for rule in [TieRule::StrictMajority, TieRule::ExcludeBill] {
            assert_eq!(build_parties(&m, rule), Err(Error::DisconnectedPartyGraph));
        }
    }

    #[test]
    fn party_tie_rules_differ() {
        // A: majorities (1,1); B: (tie,1); share is 1/2 vs 1/1.
        let m = votes(&["11", "11", "11", "01"], Some(&["A", "A", "B", "B"]));
        let strict = build_parties(&m, TieRule::StrictMajority).unwrap();
        assert_eq!(strict.edge_weight(0, 1), Some(0.5));
        let exclude = build_parties(&m, TieRule::ExcludeBill).unwrap();
        assert_eq!(exclude.edge_weight(0, 1), Some(0.0));
    }

    #[test]
    fn party_errors() {
        let m = votes(&["1", "1"], Some(&["A", "A"]));
        assert_eq!(
            build_parties(&m, TieRule::StrictMajority),
            Err(Error::FewerThanTwoGroups)
        );
        let parties = vec!["A".to_string(), "C".to_string()];
        assert_eq!(
            build_parties_with(&m, &parties, TieRule::StrictMajority),
            Err(Error::EmptyParty("C".into()))
        );
        assert!(matches!(
            build_parties(&votes(&["1"], None), TieRule::StrictMajority),
            Err(Error::InvalidVotes(_))
        ));
    }

    #[test]
    fn cosponsorship_cases() {
        let pair = build_cosponsorship(&votes(&["1", "1"], None)).unwrap();
        assert_eq!(pair.edges().len(), 1);

        let star = build_cosponsorship(&votes(&["111", "100", "010", "001"], None)).unwrap();
        assert_eq!(star.edges().len(), 3);
        assert_eq!(geodesic_distances(&star).diameter(), 2.0);

        assert!(matches!(
            build_cosponsorship(&votes(&["10", "01"], None)),
            Err(Error::Disconnected { .. })
        ));
    }

    fn profile(alts: &str, ballots: &[(&str, f64)]) -> PreferenceProfile {
        PreferenceProfile::new(
            alts.chars().map(String::from).collect(),
            ballots
                .iter()
                .map(|&(r, count)| Ballot {
                    ranking: r.chars().map(String::from).collect(),
                    count,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kemeny_matrix_two() {
        let prof = profile("abc", &[("abc", 2.0), ("bac", 3.0), ("cab", 2.0), ("cba", 4.0)]);
        let net = build_preference_kemeny(&prof).unwrap();
        assert_eq!(net.len(), 6);
        assert_eq!(net.edges().len(), 6);
        for (id, m) in [
            ("a>b>c", 2.0),
            ("b>a>c", 3.0),
            ("c>a>b", 2.0),
            ("c>b>a", 4.0),
            ("a>c>b", 0.0),
            ("b>c>a", 0.0),
        ] {
            assert_eq!(net.mass_of(id), Some(m), "{id}");
        }
        assert_eq!(net.total_mass(), 11.0);
        let dm = geodesic_distances(&net);
        let abc = net.index_of("a>b>c").unwrap();
        let cba = net.index_of("c>b>a").unwrap();
        assert_eq!(dm.get(abc, cba), 3.0);
        assert_eq!(dm.diameter(), 3.0);
    }

    #[test]
    fn kemeny_two_alternatives() {
        let net = build_preference_kemeny(&profile("ab", &[("ab", 1.0)])).unwrap();
        assert_eq!(net.len(), 2);
        assert_eq!(net.edges().len(), 1);
    }

    #[test]
    fn kemeny_guard_and_validation() {
        let big = profile("abcdefgh", &[]);
        assert_eq!(
            build_preference_kemeny(&big),
            Err(Error::TooManyAlternatives {
                alternatives: 8,
                limit: 7
            })
        );
        assert!(PreferenceProfile::new(
            vec!["a".into(), "b".into()],
            vec![Ballot {
                ranking: vec!["a".into(), "a".into()],
                count: 1.0
            }]
        )
        .is_err());
    }

    #[test]
    fn lattice_norms() {
        let pts = MassPoints::new(vec![
            MassPoint {
                position: vec![0.0, 0.0],
                mass: 1.0,
            },
            MassPoint {
                position: vec![1.0, 2.0],
                mass: 1.0,
            },
        ])
        .unwrap();
        assert_eq!(
            build_lattice(&pts, Norm::Manhattan).unwrap().edges()[0].weight,
            3.0
        );
        assert_eq!(
            build_lattice(&pts, Norm::Chebyshev).unwrap().edges()[0].weight,
            2.0
        );
        assert_eq!(
            build_lattice(&pts, Norm::Euclidean).unwrap().edges()[0].weight,
            5f64.sqrt()
        );
    }

    #[test]
    fn lattice_matches_line_in_one_dimension() {
        let pts = MassPoints::on_line(&[(0.0, 1.0), (2.0, 1.0), (5.0, 2.0)]).unwrap();
        let line = build_line(&pts).unwrap();
        let lat = build_lattice(&pts, Norm::Euclidean).unwrap();
        let (dl, dk) = (geodesic_distances(&line), geodesic_distances(&lat));
        for (i, a) in line.ids().iter().enumerate() {
            for (j, b) in line.ids().iter().enumerate() {
                let (x, y) = (lat.index_of(a).unwrap(), lat.index_of(b).unwrap());
                assert_eq!(dl.get(i, j), dk.get(x, y));
            }
        }
    }
}
