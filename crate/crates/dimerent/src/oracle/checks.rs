//! The check harness: sweeps a parameter grid and compares every redundant
//! evaluation route pairwise, reducing each comparison to one report.

use rayon::prelude::*;
use serde::Serialize;

use super::brute::{concurrence, grid_min_distance, OracleError};
use crate::dimer::{build_hamiltonian, DimerParams, FieldSpec};
use crate::entanglement::{
    closest_separable_rho23, is_separable, measure, measure_from_partition, measure_from_state,
    partial_transpose, pt_spectrum,
};
use crate::smalllin::eig_sym;
use crate::sweep::linspace;
use crate::thermal::{density_closed_form, gibbs_oracle, ThermalPoint};

const TOL_GIBBS: f64 = 1e-11;
const TOL_PT: f64 = 1e-11;
const TOL_ROUTES: f64 = 1e-12;
const TOL_CONCURRENCE: f64 = 1e-12;
const TOL_NEAREST: f64 = 1e-5;

/// Candidate count for the nearest-separable scan; half a cell of the
/// widest possible band is 2.5e-7, comfortably inside [`TOL_NEAREST`].
const NEAREST_GRID_POINTS: usize = 1_000_000;

/// Axes of the verification sweep, expanded row-major (j outer, t inner).
#[derive(Debug, Clone)]
pub struct VerifyGrid {
    j_values: Vec<f64>,
    b_values: Vec<f64>,
    t_values: Vec<f64>,
}

impl VerifyGrid {
    pub fn new(
        j_values: Vec<f64>,
        b_values: Vec<f64>,
        t_values: Vec<f64>,
    ) -> Result<Self, OracleError> {
        if j_values.is_empty() || b_values.is_empty() || t_values.is_empty() {
            return Err(OracleError::EmptyGrid);
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(&j_values) || !finite(&b_values) || !finite(&t_values) {
            return Err(OracleError::EmptyGrid);
        }
        if t_values.iter().any(|&t| t <= 0.0) {
            return Err(OracleError::EmptyGrid);
        }
        Ok(Self {
            j_values,
            b_values,
            t_values,
        })
    }

    /// 10x10x10 default: antiferromagnetic couplings against the full field
    /// and temperature ranges the rest of the suite exercises.
    pub fn coarse() -> Self {
        Self::new(
            linspace(-200.0, -1.0, 10),
            linspace(-200.0, 200.0, 10),
            linspace(0.05, 300.0, 10),
        )
        .expect("static axes are valid")
    }

    /// 30x30x30 over the same ranges.
    pub fn fine() -> Self {
        Self::new(
            linspace(-200.0, -1.0, 30),
            linspace(-200.0, 200.0, 30),
            linspace(0.05, 300.0, 30),
        )
        .expect("static axes are valid")
    }

    pub fn point_count(&self) -> usize {
        self.j_values.len() * self.b_values.len() * self.t_values.len()
    }

    fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.point_count());
        for &j in &self.j_values {
            for &b in &self.b_values {
                for &t in &self.t_values {
                    out.push((j, b, t));
                }
            }
        }
        out
    }
}

/// Outcome of one check over the whole grid.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub check_name: &'static str,
    /// Points the check actually evaluated (the nearest-separable check
    /// skips separable points).
    pub grid_size: usize,
    pub max_abs_deviation: f64,
    pub pass: bool,
    /// `(j, b, t)` of the worst deviation; first in row-major order on
    /// ties, `(0, 0, 0)` if the check evaluated nothing.
    pub worst_point: (f64, f64, f64),
}

struct PointDeviations {
    gibbs: f64,
    pt: f64,
    routes: f64,
    concurrence: f64,
    nearest: Option<f64>,
}

fn point_deviations(j: f64, b: f64, t: f64) -> Result<PointDeviations, OracleError> {
    let p = DimerParams::new(j).expect("grid validated");
    let f = FieldSpec::new(b).expect("grid validated");
    let tp = ThermalPoint::new(t).expect("grid validated");
    let rho = density_closed_form(&p, &f, &tp);
    let rho_m = rho.matrix();

    let h = build_hamiltonian(&p, &f);
    let numeric_rho = gibbs_oracle(&h, &tp)?;
    let mut gibbs = 0.0_f64;
    for i in 0..4 {
        for k in 0..4 {
            gibbs = gibbs.max((rho_m.get(i, k) - numeric_rho.get(i, k)).abs());
        }
    }

    let closed_pt = pt_spectrum(&rho).as_array();
    let numeric_pt = eig_sym(&partial_transpose(&rho_m))?.eigenvalues;
    let mut pt = 0.0_f64;
    for (i, &c) in closed_pt.iter().enumerate() {
        pt = pt.max((c - numeric_pt[3 - i]).abs());
    }

    let direct = measure(&p, &f, &tp).value;
    let from_state = measure_from_state(&rho).expect("closed-form state is physical");
    let from_partition = measure_from_partition(&p, &f, &tp);
    let routes = (direct - from_state)
        .abs()
        .max((direct - from_partition).abs());

    let conc = (direct - concurrence(&rho_m)?).abs();

    let nearest = if is_separable(&rho) {
        None
    } else {
        match (
            closest_separable_rho23(&rho),
            grid_min_distance(&rho, NEAREST_GRID_POINTS),
        ) {
            (Ok(closed), Ok((argmin, _))) => Some((closed - argmin).abs()),
            // The two separability verdicts (closed-form vs numeric) may
            // split on a state within rounding of the boundary; neither
            // route has a meaningful answer there.
            (Err(_), _) | (_, Err(OracleError::Separable)) => None,
            (_, Err(e)) => return Err(e),
        }
    };

    Ok(PointDeviations {
        gibbs,
        pt,
        routes,
        concurrence: conc,
        nearest,
    })
}

fn reduce_check(
    name: &'static str,
    tol: f64,
    points: &[(f64, f64, f64)],
    deviations: impl Iterator<Item = Option<f64>>,
) -> OracleReport {
    let mut evaluated = 0_usize;
    let mut worst = 0.0_f64;
    let mut worst_point = (0.0, 0.0, 0.0);
    let mut seen_any = false;
    for (point, dev) in points.iter().zip(deviations) {
        let Some(dev) = dev else { continue };
        evaluated += 1;
        if !seen_any || dev > worst {
            worst = dev;
            worst_point = *point;
            seen_any = true;
        }
    }
    if !seen_any {
        worst_point = (0.0, 0.0, 0.0);
    }
    OracleReport {
        check_name: name,
        grid_size: evaluated,
        max_abs_deviation: worst,
        pass: worst <= tol,
        worst_point,
    }
}

/// Runs the five redundancy checks over `grid` and reports each one.
///
/// Check failures are carried in the reports, never raised; the `Err` path
/// is reserved for broken inputs and numerical breakdown (non-convergence).
/// Points are processed concurrently but reduced in row-major order, so the
/// reports are identical for any worker count.
pub fn run_all_checks(grid: &VerifyGrid) -> Result<Vec<OracleReport>, OracleError> {
    let points = grid.points();
    let deviations: Vec<PointDeviations> = points
        .par_iter()
        .map(|&(j, b, t)| point_deviations(j, b, t))
        .collect::<Result<_, _>>()?;

    Ok(vec![
        reduce_check(
            "density-closed-vs-gibbs",
            TOL_GIBBS,
            &points,
            deviations.iter().map(|d| Some(d.gibbs)),
        ),
        reduce_check(
            "pt-spectrum-closed-vs-numeric",
            TOL_PT,
            &points,
            deviations.iter().map(|d| Some(d.pt)),
        ),
        reduce_check(
            "measure-route-agreement",
            TOL_ROUTES,
            &points,
            deviations.iter().map(|d| Some(d.routes)),
        ),
        reduce_check(
            "measure-vs-concurrence",
            TOL_CONCURRENCE,
            &points,
            deviations.iter().map(|d| Some(d.concurrence)),
        ),
        reduce_check(
            "nearest-separable-grid-argmin",
            TOL_NEAREST,
            &points,
            deviations.iter().map(|d| d.nearest),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_shape() {
        let grid = VerifyGrid::coarse();
        assert_eq!(grid.point_count(), 1000);
        assert_eq!(grid.points().len(), 1000);
        // Row-major: t moves fastest.
        let pts = grid.points();
        assert_eq!(pts[0].0, pts[1].0);
        assert_eq!(pts[0].1, pts[1].1);
        assert!(pts[0].2 < pts[1].2);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(matches!(
            VerifyGrid::new(vec![], vec![0.0], vec![1.0]),
            Err(OracleError::EmptyGrid)
        ));
        assert!(matches!(
            VerifyGrid::new(vec![-10.0], vec![0.0], vec![0.0]),
            Err(OracleError::EmptyGrid)
        ));
        assert!(matches!(
            VerifyGrid::new(vec![-10.0], vec![f64::NAN], vec![1.0]),
            Err(OracleError::EmptyGrid)
        ));
    }

    #[test]
    fn all_checks_pass_on_default_grid() {
        let reports = run_all_checks(&VerifyGrid::coarse()).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(
                r.pass,
                "{} failed: max deviation {:e} at {:?}",
                r.check_name, r.max_abs_deviation, r.worst_point
            );
            assert!(r.grid_size > 0, "{} evaluated nothing", r.check_name);
        }
        // The nearest-separable check only sees entangled points.
        assert_eq!(reports[0].grid_size, 1000);
        assert!(reports[4].grid_size < 1000);
    }

    #[test]
    fn ferromagnetic_points_skip_the_minimization_check() {
        let grid = VerifyGrid::new(vec![5.0, -10.0], vec![0.0, 50.0], vec![1.0, 20.0]).unwrap();
        let reports = run_all_checks(&grid).unwrap();
        for r in &reports {
            assert!(r.pass, "{} failed at {:?}", r.check_name, r.worst_point);
        }
        assert_eq!(reports[0].grid_size, 8);
        let nearest = &reports[4];
        assert!(nearest.grid_size < 8);
    }

    #[test]
    fn reports_serialize_to_json() {
        let grid = VerifyGrid::new(vec![-10.0], vec![0.0], vec![5.0]).unwrap();
        let reports = run_all_checks(&grid).unwrap();
        let json = serde_json::to_string(&reports).unwrap();
        assert!(json.contains("\"check_name\""));
        assert!(json.contains("measure-vs-concurrence"));
    }
}
