//! CSV readers for builder inputs.
//!
//! * votes: `voter[,party],bill_1,...,bill_k` with 0/1 entries
//! * preferences: `ranking,count` with rankings such as `c>b>a`
//! * mass points: `x_1,...,x_m,mass`

use std::io::Read;

use crate::builders::{Ballot, MassPoint, MassPoints, PreferenceProfile, VoteMatrix};
use crate::error::{Error, Result};

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input)
}

fn schema(e: csv::Error) -> Error {
    Error::Schema(e.to_string())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

pub fn read_votes<R: Read>(input: R) -> Result<VoteMatrix> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(schema)?.clone();
    if headers.get(0) != Some("voter") {
        return Err(Error::Schema("vote CSV must start with a `voter` column".into()));
    }
    let has_party = headers.get(1) == Some("party");
    let first_bill = if has_party { 2 } else { 1 };
    if headers.len() <= first_bill {
        return Err(Error::Schema("vote CSV has no bill columns".into()));
    }
    let mut voters = Vec::new();
    let mut parties = Vec::new();
    let mut entries = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(schema)?;
        voters.push(record[0].to_string());
        if has_party {
            parties.push(record[1].to_string());
        }
        let row = record
            .iter()
            .skip(first_bill)
            .map(|v| match v {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Schema(format!(
                    "line {}: vote `{other}` is not 0 or 1",
                    line_of(&record)
                ))),
            })
            .collect::<Result<Vec<bool>>>()?;
        entries.push(row);
    }
    VoteMatrix::new(voters, entries, has_party.then_some(parties))
}

pub fn read_preferences<R: Read>(input: R) -> Result<PreferenceProfile> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(schema)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["ranking", "count"] {
        return Err(Error::Schema(
            "preference CSV header must be `ranking,count`".into(),
        ));
    }
    let mut ballots = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(schema)?;
        let ranking: Vec<String> = record[0].split('>').map(|s| s.trim().to_string()).collect();
        let count: f64 = record[1].parse().map_err(|_| {
            Error::Schema(format!(
                "line {}: count `{}` is not a number",
                line_of(&record),
                &record[1]
            ))
        })?;
        ballots.push(Ballot { ranking, count });
    }
    let Some(first) = ballots.first() else {
        return Err(Error::Schema("preference CSV has no ballots".into()));
    };
    let mut alternatives = first.ranking.clone();
    alternatives.sort();
    PreferenceProfile::new(alternatives, ballots)
}

pub fn read_mass_points<R: Read>(input: R) -> Result<MassPoints> {
    let mut rdr = reader(input);
    let headers = rdr.headers().map_err(schema)?.clone();
    if headers.len() < 2 || headers.get(headers.len() - 1) != Some("mass") {
        return Err(Error::Schema(
            "mass point CSV needs coordinate columns followed by `mass`".into(),
        ));
    }
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(schema)?;
        let values = record
            .iter()
            .map(|v| {
                v.parse::<f64>().map_err(|_| {
                    Error::Schema(format!(
                        "line {}: `{v}` is not a number",
                        line_of(&record)
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let (mass, position) = values.split_last().expect("header has >= 2 columns");
        points.push(MassPoint {
            position: position.to_vec(),
            mass: *mass,
        });
    }
    MassPoints::new(points)
}
