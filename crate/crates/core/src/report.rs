//! Tabular renderings of power reports, as CSV or aligned text.

use crate::committee::Committee;
use crate::error::Result;
use crate::exact::{ratio_to_f64, ExactPowerReport};
use crate::io::ImfMember;
use crate::mc::{difference_significant, McPowerReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Columns padded to a common width; numeric-looking cells right-aligned.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| {
                    if c.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-') {
                        format!("{c:>w$}")
                    } else {
                        format!("{c:<w$}")
                    }
                })
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        out.push_str(&"-".repeat(out.len() - 1));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

fn fixed(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

/// One row per player: weight, swing count, exact and rounded indices.
pub fn exact_table(report: &ExactPowerReport) -> Table {
    let mut t = Table::new([
        "player",
        "weight",
        "swing_count",
        "unnormalized_exact",
        "normalized_exact",
        "normalized_float",
    ]);
    for p in &report.players {
        t.rows.push(vec![
            (p.player + 1).to_string(),
            p.weight.to_string(),
            p.swing_count.to_string(),
            p.unnormalized.to_string(),
            p.normalized.to_string(),
            fixed(ratio_to_f64(p.normalized), 4),
        ]);
    }
    t
}

/// Rules as rows, players as columns, normalized influence to 4 decimals.
pub fn rules_matrix(reports: &[ExactPowerReport]) -> Table {
    let n = reports.first().map_or(0, |r| r.players.len());
    let mut t = Table::new(
        std::iter::once("rule".to_string()).chain((1..=n).map(|i| format!("player_{i}"))),
    );
    for r in reports {
        let mut row = vec![r.rule.name().to_string()];
        row.extend(r.players.iter().map(|p| fixed(p.normalized_f64(), 4)));
        t.rows.push(row);
    }
    t
}

pub fn mc_table(report: &McPowerReport, labels: Option<&[String]>) -> Table {
    let mut t = Table::new([
        "player",
        "label",
        "weight",
        "hit_count",
        "unnormalized_estimate",
        "normalized_estimate",
        "ci_half_width",
        "exceeds_bound",
    ]);
    for p in &report.players {
        let label = labels
            .and_then(|l| l.get(p.player).cloned())
            .unwrap_or_default();
        t.rows.push(vec![
            (p.player + 1).to_string(),
            label,
            p.weight.to_string(),
            p.hit_count.to_string(),
            fixed(p.unnormalized_estimate, 6),
            fixed(p.normalized_estimate, 6),
            fixed(p.ci_half_width, 6),
            p.exceeds_bound.to_string(),
        ]);
    }
    t
}

/// Board members with their shares (percent) and the estimates of one rule
/// for whichever eras were run; with both eras and `diff`, adds the z-score
/// and significance flag of the pre/post difference.
pub fn imf_table(
    members: &[ImfMember],
    pre: Option<&McPowerReport>,
    post: Option<&McPowerReport>,
    diff: bool,
) -> Result<Table> {
    let mut headers = vec![
        "member".to_string(),
        "share_pre".into(),
        "share_post".into(),
    ];
    for (name, report) in [("pre", pre), ("post", post)] {
        if let Some(r) = report {
            headers.push(format!("{}_{name}", r.rule));
            headers.push(format!("{}_{name}_ci", r.rule));
        }
    }
    let diff = match (pre, post) {
        (Some(a), Some(b)) if diff => Some((a, b)),
        _ => None,
    };
    if diff.is_some() {
        headers.push("z".into());
        headers.push("significant".into());
    }
    let mut t = Table::new(headers);
    for (i, m) in members.iter().enumerate() {
        let mut row = vec![
            m.label.clone(),
            fixed(m.share_pre as f64 / 100.0, 2),
            fixed(m.share_post as f64 / 100.0, 2),
        ];
        for r in [pre, post].into_iter().flatten() {
            let p = &r.players[i];
            row.push(fixed(p.normalized_estimate, 4));
            row.push(fixed(p.ci_half_width, 4));
        }
        if let Some((a, b)) = diff {
            let s = difference_significant(a, b, i)?;
            row.push(fixed(s.z, 3));
            row.push(s.significant.to_string());
        }
        t.rows.push(row);
    }
    Ok(t)
}

/// Tally details printed by `eval --verbose`.
pub fn tally_lines(
    committee: &Committee,
    profile: &crate::ranking::Profile,
) -> Result<Vec<String>> {
    use crate::committee::Rule;
    use crate::rules;
    let labels = committee.labels();
    let named = |values: &[u64]| -> String {
        labels
            .iter()
            .zip(values)
            .map(|(l, v)| format!("{l}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let matrix = |rows: Vec<Vec<u64>>, out: &mut Vec<String>| {
        out.push(format!("   {}", labels.join(" ")));
        for (l, row) in labels.iter().zip(rows) {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push(format!("{l}: {}", cells.join(" ")));
        }
    };
    let mut out = Vec::new();
    match committee.rule() {
        Rule::Plurality | Rule::PluralityRunoff => {
            out.push(format!(
                "first places: {}",
                named(&rules::plurality_scores(committee, profile)?)
            ));
            if committee.rule() == Rule::PluralityRunoff {
                out.push("pairwise:".into());
                matrix(rules::pairwise_tally(committee, profile)?.rows(), &mut out);
            }
        }
        Rule::Borda => {
            out.push(format!(
                "borda scores: {}",
                named(&rules::borda_scores(committee, profile)?)
            ));
        }
        Rule::Copeland => {
            out.push("pairwise:".into());
            matrix(rules::pairwise_tally(committee, profile)?.rows(), &mut out);
            out.push(format!(
                "copeland scores: {}",
                named(&rules::copeland_scores(committee, profile)?)
            ));
        }
        Rule::Schulze => {
            out.push("pairwise:".into());
            matrix(rules::pairwise_tally(committee, profile)?.rows(), &mut out);
            out.push("strongest paths:".into());
            matrix(rules::schulze_strengths(committee, profile)?, &mut out);
        }
    }
    Ok(out)
}
