use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::Context;
use num_complex::Complex64;
use qtele_core::transient::projector_pair_weak_value;
use qtele_core::{
    output_joint_probabilities, pair_transient, prepare_input, project_bell, teleport::corrected_overlap, theta_sweep,
    BellOutcome, Dimension, MeasurementStrength,
};

use crate::config::{Command, RunConfig};
use crate::table::{Cell, Table};

pub const TELEPORT_COLUMNS: [&str; 5] = ["m", "a", "b", "probability", "overlap"];
pub const WEAK_VALUE_COLUMNS: [&str; 7] = ["m", "a", "b", "i", "j", "re", "im"];
pub const JOINT_COLUMNS: [&str; 5] = ["theta", "m", "i", "j", "probability"];
pub const SWEEP_COLUMNS: [&str; 9] = ["theta", "c_m", "c_i", "rho_i", "rho_f", "rho_t", "f_a", "f_b", "f_avg"];

/// Runs the configured command and writes its table to `--out` or `stdout`.
pub fn run<W: Write>(config: &RunConfig, stdout: W) -> anyhow::Result<()> {
    let table = build_table(config)?;
    match &config.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write(config.format, &mut w)?;
            w.flush()?;
        }
        None => table.write(config.format, stdout)?,
    }
    Ok(())
}

pub fn build_table(config: &RunConfig) -> anyhow::Result<Table> {
    let d = Dimension::new(config.d)?;
    match &config.command {
        Command::Teleport { m } => teleport(config, d, *m),
        Command::WeakValues { .. } => weak_values(config, d),
        Command::JointProbs {
            theta,
            m,
            q_basis,
            p_basis,
        } => {
            let psi = config.psi.build(d, config.seed)?;
            let theta_s = MeasurementStrength::new(*theta)?;
            let outcome = BellOutcome::new(d, *m)?;
            let table = output_joint_probabilities(&psi, theta_s, outcome, &q_basis.build(d), &p_basis.build(d))?;
            let mut out = Table::new(JOINT_COLUMNS.to_vec());
            for (i, row) in table.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    out.push(vec![
                        Cell::Num(*theta),
                        Cell::Int(*m),
                        Cell::Int(i),
                        Cell::Int(j),
                        Cell::Num(*p),
                    ]);
                }
            }
            Ok(out)
        }
        Command::Sweep {
            points,
            theta_min,
            theta_max,
        } => {
            let mut out = Table::new(SWEEP_COLUMNS.to_vec());
            for r in theta_sweep(d, *points, (*theta_min, *theta_max))? {
                out.push(
                    [r.theta, r.c_m, r.c_i, r.rho_i, r.rho_f, r.rho_t, r.f_a, r.f_b, r.f_avg]
                        .into_iter()
                        .map(Cell::Num)
                        .collect(),
                );
            }
            Ok(out)
        }
    }
}

fn outcomes(d: Dimension, m: Option<usize>) -> anyhow::Result<Vec<BellOutcome>> {
    Ok(match m {
        Some(m) => vec![BellOutcome::new(d, m)?],
        None => BellOutcome::all(d).collect(),
    })
}

fn outcome_cells(m: BellOutcome) -> [Cell; 3] {
    [Cell::Int(m.index()), Cell::Int(m.shift()), Cell::Int(m.phase())]
}

fn teleport(config: &RunConfig, d: Dimension, m: Option<usize>) -> anyhow::Result<Table> {
    let psi = config.psi.build(d, config.seed)?;
    let input = prepare_input(&psi, d)?;
    let mut out = Table::new(TELEPORT_COLUMNS.to_vec());
    for m in outcomes(d, m)? {
        let r = project_bell(&input, m)?;
        let mut row = outcome_cells(m).to_vec();
        row.push(Cell::Num(r.probability));
        row.push(Cell::Num(corrected_overlap(&psi, &r)?));
        out.push(row);
    }
    Ok(out)
}

fn weak_values(config: &RunConfig, d: Dimension) -> anyhow::Result<Table> {
    let Command::WeakValues {
        m,
        q_basis,
        p_basis,
        frame,
        check_marginals,
    } = &config.command
    else {
        unreachable!("called for weak-values only");
    };
    let psi = config.psi.build(d, config.seed)?;
    let (q, p) = (q_basis.build(d), p_basis.build(d));
    let n = d.get();
    let mut out = Table::new(WEAK_VALUE_COLUMNS.to_vec());
    for m in outcomes(d, *m)? {
        let t_ab = pair_transient(&psi, m)?;
        let mut values = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (i, row) in values.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = projector_pair_weak_value(&t_ab, &q, i, &p, j, *frame)?.value;
                let mut cells = outcome_cells(m).to_vec();
                cells.extend([Cell::Int(i), Cell::Int(j), Cell::Num(v.re), Cell::Num(v.im)]);
                out.push(cells);
            }
        }
        if *check_marginals {
            for (i, row) in values.iter().enumerate() {
                let s: Complex64 = row.iter().sum();
                let mut cells = outcome_cells(m).to_vec();
                cells.extend([Cell::Int(i), Cell::Text("sum"), Cell::Num(s.re), Cell::Num(s.im)]);
                out.push(cells);
            }
            for j in 0..n {
                let s: Complex64 = values.iter().map(|row| row[j]).sum();
                let mut cells = outcome_cells(m).to_vec();
                cells.extend([Cell::Text("sum"), Cell::Int(j), Cell::Num(s.re), Cell::Num(s.im)]);
                out.push(cells);
            }
        }
    }
    Ok(out)
}
