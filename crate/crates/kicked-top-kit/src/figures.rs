//! Canned data sets behind the `figure` command: the underlying numbers of
//! the classical-map portraits, OTOC plots and echo-decay plots, at desk
//! scale.

use std::f64::consts::PI;

use crate::export::{Cell, Table};
use crate::spin::SpinParams;
use crate::{cheb, classical, echo, otoc, Error, Result};

/// A named figure data set.
pub struct FigureSpec {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
}

pub const FIGURES: &[FigureSpec] = &[
    FigureSpec {
        id: "fig1",
        aliases: &[],
        description: "classical phase portraits (theta, phi) at kappa0 = 0.5, 2.5, 6.5",
    },
    FigureSpec {
        id: "fig2",
        aliases: &[],
        description: "three-qubit OTOC at n = 2, 3 vs kappa0 in [0, 3pi/2]",
    },
    FigureSpec {
        id: "fig3",
        aliases: &[],
        description: "three-qubit OTOC density over (n, kappa0), even/odd tagged",
    },
    FigureSpec {
        id: "fig4",
        aliases: &[],
        description: "three-qubit ln OTOC for n = 1..3 at a few kappa0",
    },
    FigureSpec {
        id: "fig5",
        aliases: &[],
        description: "ln OTOC at kappa0 = 3pi/2 for growing j (slope saturation)",
    },
    FigureSpec {
        id: "fig6",
        aliases: &[],
        description: "four-qubit OTOC growth at near-integrable kappa0",
    },
    FigureSpec {
        id: "fig7",
        aliases: &[],
        description: "four-qubit OTOC at large kappa0 including 2pi",
    },
    FigureSpec {
        id: "fig8",
        aliases: &[],
        description: "ln OTOC for j2 = 4, 8, 16 at kappa0 = 2pi, n = 1..3",
    },
    FigureSpec {
        id: "le3",
        aliases: &["fig9"],
        description: "averaged echo, delta = 0.01, kappa0 = 2pi, j = 2, 4, 8",
    },
    FigureSpec {
        id: "le4",
        aliases: &["fig10"],
        description: "averaged echo, delta = 0.1, kappa0 = 2pi, j = 2, 4, 8",
    },
    FigureSpec {
        id: "le5",
        aliases: &["fig11"],
        description: "averaged echo, delta = 0.1, kappa0 = 2pi, j = 8, 16, 32",
    },
    FigureSpec {
        id: "le6",
        aliases: &["fig12"],
        description: "averaged echo, delta = 0.5, kappa0 = 2pi, j = 8, 16, 32",
    },
    FigureSpec {
        id: "le7",
        aliases: &[],
        description: "averaged echo at j = 64, kappa0 = 2pi, delta = 0.1..0.5",
    },
    FigureSpec {
        id: "le000",
        aliases: &[],
        description: "|000> echo over (kappa0, n), delta = 0.005, three qubits",
    },
    FigureSpec {
        id: "leppp",
        aliases: &[],
        description: "|+++> echo over (kappa0, n), delta = 0.005, three qubits",
    },
];

/// Resolve an id or alias.
pub fn lookup(id: &str) -> Option<&'static FigureSpec> {
    FIGURES.iter().find(|f| f.id == id || f.aliases.contains(&id))
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|k| lo + step * k as f64).collect()
}

fn portraits() -> Table {
    let mut t = Table::new(vec!["kappa0", "trajectory", "n", "theta", "phi"]);
    let initials = classical::random_states(40, 7);
    for &kappa0 in &[0.5, 2.5, 6.5] {
        for (idx, &s0) in initials.iter().enumerate() {
            for (n, s) in classical::trajectory(s0, kappa0, 400).into_iter().enumerate() {
                let (theta, phi) = s.to_angles();
                t.push(vec![
                    Cell::Float(kappa0),
                    Cell::Int(idx as i64),
                    Cell::Int(n as i64),
                    Cell::Float(theta),
                    Cell::Float(phi),
                ]);
            }
        }
    }
    t
}

fn otoc_vs_kappa() -> Table {
    let mut t = Table::new(vec!["kappa0", "c_inf_2", "c_inf_3"]);
    for kappa0 in linspace(0.0, 1.5 * PI, 200) {
        t.push(vec![
            Cell::Float(kappa0),
            Cell::Float(cheb::three_qubit_otoc(2, kappa0)),
            Cell::Float(cheb::three_qubit_otoc(3, kappa0)),
        ]);
    }
    t
}

fn otoc_density() -> Table {
    let mut t = Table::new(vec!["n", "kappa0", "c_inf", "parity"]);
    for n in 1..=24u64 {
        for kappa0 in linspace(0.0, 1.5 * PI, 121) {
            t.push(vec![
                Cell::Int(n as i64),
                Cell::Float(kappa0),
                Cell::Float(cheb::three_qubit_otoc(n, kappa0)),
                Cell::text(if n % 2 == 0 { "even" } else { "odd" }),
            ]);
        }
    }
    t
}

fn otoc_loglin() -> Table {
    let mut t = Table::new(vec!["kappa0", "n", "c_inf", "ln_c_inf"]);
    for &kappa0 in &[0.5, 1.5, 3.0, 1.5 * PI] {
        for n in 1..=3u64 {
            let c = cheb::three_qubit_otoc(n, kappa0);
            t.push(vec![
                Cell::Float(kappa0),
                Cell::Int(n as i64),
                Cell::Float(c),
                Cell::Float(c.ln()),
            ]);
        }
    }
    t
}

fn otoc_slope_saturation(j2s: &[u32], kappa0: f64) -> Result<Table> {
    let mut t = Table::new(vec!["j2", "n", "c_inf", "ln_c_inf"]);
    for &j2 in j2s {
        let params = SpinParams::new(j2, kappa0)?;
        let series = otoc::otoc_infinite(&params, 3)?;
        for pt in &series.values {
            t.push(vec![
                Cell::Int(j2 as i64),
                Cell::Int(pt.n as i64),
                Cell::Float(pt.c_inf),
                Cell::Float(pt.c_inf.ln()),
            ]);
        }
    }
    Ok(t)
}

fn four_qubit_otoc_curves(kappas: &[f64]) -> Table {
    let mut t = Table::new(vec!["kappa0", "n", "c_inf"]);
    for &kappa0 in kappas {
        for n in 1..=32u64 {
            t.push(vec![
                Cell::Float(kappa0),
                Cell::Int(n as i64),
                Cell::Float(cheb::four_qubit_otoc(n, kappa0)),
            ]);
        }
    }
    t
}

fn echo_curves(j2s: &[u32], deltas: &[f64], n_max: u64) -> Result<Table> {
    let mut t = Table::new(vec!["j2", "delta", "n", "fbar"]);
    for &j2 in j2s {
        let params = SpinParams::new(j2, 2.0 * PI)?;
        for &delta in deltas {
            let series = echo::average_series(&params, delta, n_max)?;
            for (n, f) in series.values {
                t.push(vec![
                    Cell::Int(j2 as i64),
                    Cell::Float(delta),
                    Cell::Int(n as i64),
                    Cell::Float(f),
                ]);
            }
        }
    }
    Ok(t)
}

fn state_echo_contour(use_ppp: bool) -> Table {
    let mut t = Table::new(vec!["kappa0", "n", "fidelity"]);
    let delta = 0.005;
    for kappa0 in linspace(0.0, 1.5 * PI, 61) {
        for n in 0..=30u64 {
            let f = if use_ppp {
                cheb::state_fidelity_ppp(n, kappa0, delta)
            } else {
                cheb::state_fidelity_000(n, kappa0, delta)
            };
            t.push(vec![Cell::Float(kappa0), Cell::Int(n as i64), Cell::Float(f)]);
        }
    }
    t
}

/// Build the data table behind a figure id.
pub fn figure_table(id: &str) -> Result<Table> {
    let spec = lookup(id)
        .ok_or_else(|| Error::Config(format!("unknown figure id `{id}` (try `figure list`)")))?;
    match spec.id {
        "fig1" => Ok(portraits()),
        "fig2" => Ok(otoc_vs_kappa()),
        "fig3" => Ok(otoc_density()),
        "fig4" => Ok(otoc_loglin()),
        "fig5" => otoc_slope_saturation(&[3, 5, 7, 11, 21, 40], 1.5 * PI),
        "fig6" => Ok(four_qubit_otoc_curves(&[0.25, 0.5, 1.0])),
        "fig7" => Ok(four_qubit_otoc_curves(&[3.0, 4.5, 2.0 * PI])),
        "fig8" => otoc_slope_saturation(&[4, 8, 16], 2.0 * PI),
        "le3" => echo_curves(&[4, 8, 16], &[0.01], 30),
        "le4" => echo_curves(&[4, 8, 16], &[0.1], 30),
        "le5" => echo_curves(&[16, 32, 64], &[0.1], 40),
        "le6" => echo_curves(&[16, 32, 64], &[0.5], 40),
        "le7" => echo_curves(&[128], &[0.1, 0.2, 0.3, 0.4, 0.5], 40),
        "le000" => Ok(state_echo_contour(false)),
        "leppp" => Ok(state_echo_contour(true)),
        _ => unreachable!("registry covers every id"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::export::parse_csv;

    #[test]
    fn registry_resolves_ids_and_aliases() {
        assert!(lookup("fig5").is_some());
        assert_eq!(lookup("fig9").unwrap().id, "le3");
        assert!(lookup("nope").is_none());
        assert!(matches!(figure_table("nope"), Err(Error::Config(_))));
    }

    #[test]
    fn fig8_schema_and_values() {
        let t = figure_table("fig8").unwrap();
        assert_eq!(t.columns, vec!["j2", "n", "c_inf", "ln_c_inf"]);
        assert_eq!(t.rows.len(), 9);
        // the j = 2 row at n = 2 carries the exact 68/5
        let row = &t.rows[1];
        assert_eq!(row[0], Cell::Int(4));
        assert!((row[2].as_f64().unwrap() - 13.6).abs() < 1e-9);
    }

    #[test]
    fn le3_schema() {
        let t = figure_table("le3").unwrap();
        assert_eq!(t.columns, vec!["j2", "delta", "n", "fbar"]);
        assert_eq!(t.rows.len(), 3 * 31);
        for row in &t.rows {
            let f = row[3].as_f64().unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&f));
        }
    }

    #[test]
    fn figure_csv_round_trips() {
        let t = figure_table("fig4").unwrap();
        let parsed = parse_csv(&t.to_csv(&[])).unwrap();
        assert_eq!(parsed.rows.len(), t.rows.len());
        for (a, b) in t.rows.iter().zip(&parsed.rows) {
            assert_eq!(
                a[2].as_f64().unwrap().to_bits(),
                b[2].as_f64().unwrap().to_bits()
            );
        }
    }
}
