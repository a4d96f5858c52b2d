//! The normalized multivariable Conway function of a grid diagram.
//!
//! The computation runs through a free-derivative matrix read off the
//! interior grid lines: entry (i, j) is nonzero exactly when the
//! vertical segment of column j crosses the i-th horizontal grid line,
//! and then equals the monomial recording, per component, the signed
//! number of strands crossing that line strictly left of column j
//! (upward strands count +1). Deleting any one column j of the matrix
//! and dividing the signed determinant by θ_j − 1, where θ_j is the
//! variable of column j's component raised to its orientation sign,
//! yields the same rational function M regardless of j. The Conway
//! function is M with all variables squared, normalized by the sign of
//! the base permutation, the parity of upward columns, the product ω
//! of the matrix entries sitting at the diagram's corners, and the
//! component curvatures.

use crate::grid::{ComponentMap, Corner, GridDiagram};
use crate::laurent::{determinant, ExponentVector, LaurentPoly, RationalFn};
use crate::{Error, Result};

/// The free-derivative matrix: `entries[i-1][j-1]` covers interior
/// line i (1..n-1) and column j (1..n). Variables are the link
/// components, exponents stored in half-units (doubled).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxMatrix {
    pub mu: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

/// Builds the free-derivative matrix of a grid.
pub fn fox_matrix(g: &GridDiagram, comps: &ComponentMap) -> FoxMatrix {
    let n = g.n();
    let mu = comps.mu;
    let mut entries = vec![vec![LaurentPoly::zero(mu); n]; n - 1];
    for line in 1..n {
        // Running signed crossing counts per component, scanned left
        // to right; integer exponents (stored doubled).
        let mut phi = ExponentVector::zeros(mu);
        for col in 1..=n {
            if g.crosses_line(col, line) {
                entries[line - 1][col - 1] = LaurentPoly::monomial(1, phi.clone());
                let k = comps.comp_of_col[col - 1];
                phi.0[k] += if g.is_upward(col) { 2 } else { -2 };
            }
        }
    }
    FoxMatrix { mu, entries }
}

/// θ_j: the component variable of column j raised to the column's
/// orientation sign.
pub fn theta(g: &GridDiagram, comps: &ComponentMap, col: usize) -> LaurentPoly {
    let k = comps.comp_of_col[col - 1];
    let e = if g.is_upward(col) { 2 } else { -2 };
    LaurentPoly::var_pow(comps.mu, k, e)
}

/// Verifies the row identity Σ_j F(i,j)·(θ_j − 1) = 0 for every
/// interior line; this is what makes `m_poly` column-independent.
pub fn check_row_identity(g: &GridDiagram, comps: &ComponentMap, fox: &FoxMatrix) -> Result<()> {
    let n = g.n();
    let one = LaurentPoly::one(fox.mu);
    for (i, row) in fox.entries.iter().enumerate() {
        let mut sum = LaurentPoly::zero(fox.mu);
        for (j, entry) in row.iter().enumerate() {
            sum = &sum + &(entry * &(&theta(g, comps, j + 1) - &one));
        }
        if !sum.is_zero() {
            return Err(Error::LemmaViolation(format!(
                "row identity fails on line {} of the derivative matrix (n = {n}): {sum}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// M = (−1)^j · det(F with column j removed) / (θ_j − 1), for any
/// 1-based column j. The result does not depend on j.
pub fn m_poly(g: &GridDiagram, comps: &ComponentMap, fox: &FoxMatrix, j: usize) -> RationalFn {
    let minor: Vec<Vec<LaurentPoly>> = fox
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != j - 1)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect();
    let det = determinant(&minor);
    let den = &theta(g, comps, j) - &LaurentPoly::one(fox.mu);
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    RationalFn::new(det.scale(sign), den)
}

/// The corner weight: of the two matrix entries flanking a corner at
/// (row i, column j) — F(i−1, j) above and F(i, j) below, with rows 0
/// and n absent — exactly one is nonzero, and the weight is its
/// exponent vector (stored half-units).
pub fn corner_weight(n: usize, fox: &FoxMatrix, corner: &Corner) -> Result<ExponentVector> {
    let entry_at = |line: usize| -> Option<&LaurentPoly> {
        if line == 0 || line == n {
            None
        } else {
            let e = &fox.entries[line - 1][corner.v_col - 1];
            if e.is_zero() {
                None
            } else {
                Some(e)
            }
        }
    };
    let above = entry_at(corner.h_row - 1);
    let below = entry_at(corner.h_row);
    match (above, below) {
        (Some(e), None) | (None, Some(e)) => {
            let (exps, coeff) = e.leading().expect("nonzero entry");
            debug_assert_eq!(e.num_terms(), 1);
            debug_assert_eq!(coeff, 1);
            Ok(exps.clone())
        }
        (a, b) => Err(Error::WeightAmbiguous {
            row: corner.h_row,
            col: corner.v_col,
            detail: format!(
                "entries above/below are {} and {}",
                a.map_or("absent".to_string(), |e| e.to_string()),
                b.map_or("absent".to_string(), |e| e.to_string()),
            ),
        }),
    }
}

/// ω: the product of all 2n corner weights, returned as integer
/// exponents per component.
pub fn omega(g: &GridDiagram, fox: &FoxMatrix) -> Result<Vec<i64>> {
    let mut acc = ExponentVector::zeros(fox.mu);
    for corner in g.corners() {
        acc = acc.add(&corner_weight(g.n(), fox, &corner)?);
    }
    Ok(acc.0.iter().map(|&h| (h / 2) as i64).collect())
}

/// Everything the Conway computation produces, kept for reporting.
#[derive(Debug, Clone)]
pub struct ConwayData {
    pub n: usize,
    pub mu: usize,
    /// Signature of the base permutation.
    pub sign_x0: i64,
    /// Total and per-component counts of upward columns.
    pub upward_total: usize,
    pub upward_per: Vec<usize>,
    /// Per-component curvature of the Seifert-smoothed diagram.
    pub kappa: Vec<i64>,
    /// Integer exponents of the corner-weight product ω.
    pub omega: Vec<i64>,
    /// The column-independent determinant ratio (half-weight variables).
    pub m: RationalFn,
    /// The normalized Conway function (whole-weight variables allowed
    /// half-integer exponents for knots with odd framing data).
    pub gamma: RationalFn,
}

/// Computes the normalized Conway function Γ of a grid diagram.
pub fn conway(g: &GridDiagram) -> Result<ConwayData> {
    let comps = g.components();
    let fox = fox_matrix(g, &comps);
    check_row_identity(g, &comps, &fox)?;
    let m = m_poly(g, &comps, &fox, 1);
    let (_, sign_x0) = g.base_permutation();
    let (upward_total, upward_per) = g.upward_counts(&comps);
    let kappa = g.curvatures(&comps);
    let w = omega(g, &fox)?;

    // Γ = sgn(x_0) · (−1)^u · M(t²) / (ω t^κ).
    let sign = sign_x0 * if upward_total % 2 == 0 { 1 } else { -1 };
    let mut shift = ExponentVector::zeros(comps.mu);
    for k in 0..comps.mu {
        shift.0[k] = (-2 * (w[k] + kappa[k])) as i32;
    }
    let gamma = m
        .substitute_square()
        .scale(sign)
        .mul_poly(&LaurentPoly::monomial(1, shift));
    Ok(ConwayData {
        n: g.n(),
        mu: comps.mu,
        sign_x0,
        upward_total,
        upward_per,
        kappa,
        omega: w,
        m,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> GridDiagram {
        GridDiagram::validate(vec![1, 2], vec![2, 1]).unwrap()
    }

    fn trefoil() -> GridDiagram {
        GridDiagram::validate(vec![1, 5, 4, 3, 2], vec![4, 3, 2, 1, 5]).unwrap()
    }

    fn hopf() -> GridDiagram {
        GridDiagram::validate(vec![1, 2, 3, 4], vec![3, 4, 1, 2]).unwrap()
    }

    fn entry(mu: usize, exps: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(
            1,
            ExponentVector(exps.iter().map(|&e| 2 * e).collect::<Vec<_>>()),
        )
        .scale(1)
        .add(&LaurentPoly::zero(mu))
    }

    fn row(mu: usize, spec: &[Option<&[i32]>]) -> Vec<LaurentPoly> {
        spec.iter()
            .map(|e| match e {
                Some(exps) => entry(mu, exps),
                None => LaurentPoly::zero(mu),
            })
            .collect()
    }

    #[test]
    fn fox_matrix_goldens() {
        let g = unknot();
        let fox = fox_matrix(&g, &g.components());
        assert_eq!(fox.entries, vec![row(1, &[Some(&[0]), Some(&[-1])])]);

        let g = trefoil();
        let fox = fox_matrix(&g, &g.components());
        let expected = vec![
            row(1, &[Some(&[0]), None, None, Some(&[-1]), None]),
            row(1, &[Some(&[0]), None, Some(&[-1]), Some(&[0]), Some(&[1])]),
            row(1, &[Some(&[0]), Some(&[-1]), Some(&[0]), None, Some(&[1])]),
            row(1, &[None, Some(&[0]), None, None, Some(&[1])]),
        ];
        assert_eq!(fox.entries, expected);

        let g = hopf();
        let fox = fox_matrix(&g, &g.components());
        let expected = vec![
            row(2, &[Some(&[0, 0]), None, Some(&[-1, 0]), None]),
            row(
                2,
                &[
                    Some(&[0, 0]),
                    Some(&[-1, 0]),
                    Some(&[-1, -1]),
                    Some(&[0, -1]),
                ],
            ),
            row(2, &[None, Some(&[0, 0]), None, Some(&[0, -1])]),
        ];
        assert_eq!(fox.entries, expected);
    }

    #[test]
    fn row_identity_holds() {
        for g in [
            unknot(),
            trefoil(),
            hopf(),
            unknot().disjoint_union(&unknot()),
            hopf().disjoint_union(&unknot()),
        ] {
            let comps = g.components();
            let fox = fox_matrix(&g, &comps);
            check_row_identity(&g, &comps, &fox).unwrap();
        }
    }

    #[test]
    fn m_is_column_independent() {
        for g in [
            unknot(),
            trefoil(),
            hopf(),
            hopf().disjoint_union(&unknot()),
        ] {
            let comps = g.components();
            let fox = fox_matrix(&g, &comps);
            let m1 = m_poly(&g, &comps, &fox, 1);
            for j in 2..=g.n() {
                assert_eq!(m_poly(&g, &comps, &fox, j), m1, "column {j} disagrees");
            }
        }
    }

    #[test]
    fn omega_goldens() {
        for (g, expected) in [
            (unknot(), vec![-2]),
            (trefoil(), vec![-1]),
            (hopf(), vec![-3, -3]),
        ] {
            let fox = fox_matrix(&g, &g.components());
            assert_eq!(omega(&g, &fox).unwrap(), expected);
        }
    }

    #[test]
    fn gamma_unknot() {
        let data = conway(&unknot()).unwrap();
        assert_eq!(data.sign_x0, -1);
        assert_eq!(data.upward_total, 1);
        assert_eq!(data.kappa, vec![1]);
        // Γ = 1/(t − t⁻¹).
        let expected = RationalFn::new(
            LaurentPoly::one(1),
            &LaurentPoly::var_pow(1, 0, 2) - &LaurentPoly::var_pow(1, 0, -2),
        );
        assert_eq!(data.gamma, expected);
        assert_eq!(data.gamma.to_string(), "1/(t1 - t1^(-1))");
    }

    #[test]
    fn gamma_trefoil() {
        let data = conway(&trefoil()).unwrap();
        assert_eq!(data.sign_x0, 1);
        assert_eq!(data.upward_total, 3);
        assert_eq!(data.kappa, vec![0]);
        // Γ = (t² − 1 + t⁻²)/(t − t⁻¹).
        let num = &(&LaurentPoly::var_pow(1, 0, 4) - &LaurentPoly::one(1))
            + &LaurentPoly::var_pow(1, 0, -4);
        let den = &LaurentPoly::var_pow(1, 0, 2) - &LaurentPoly::var_pow(1, 0, -2);
        assert_eq!(data.gamma, RationalFn::new(num, den));
        assert_eq!(
            data.gamma.to_string(),
            "(t1^2 - 1 + t1^(-2))/(t1 - t1^(-1))"
        );
    }

    #[test]
    fn gamma_hopf() {
        let data = conway(&hopf()).unwrap();
        assert_eq!(data.sign_x0, 1);
        assert_eq!(data.upward_total, 2);
        assert_eq!(data.upward_per, vec![1, 1]);
        assert_eq!(data.kappa, vec![1, 1]);
        assert_eq!(data.omega, vec![-3, -3]);
        assert_eq!(data.gamma, RationalFn::from_poly(LaurentPoly::one(2)));
        assert_eq!(data.gamma.to_string(), "1");
    }

    #[test]
    fn gamma_vanishes_on_split_links() {
        for g in [
            unknot().disjoint_union(&unknot()),
            hopf().disjoint_union(&unknot()),
        ] {
            let data = conway(&g).unwrap();
            assert!(data.gamma.is_zero());
        }
    }

    #[test]
    fn gamma_respects_symmetry() {
        // Γ(t₁⁻¹, …) = (−1)^μ Γ(t₁, …).
        for g in [unknot(), trefoil(), hopf()] {
            let data = conway(&g).unwrap();
            let mu = g.components().mu;
            let flipped = data.gamma.invert_vars();
            let signed = if mu % 2 == 0 {
                data.gamma.clone()
            } else {
                data.gamma.neg()
            };
            assert_eq!(flipped, signed);
        }
    }
}
