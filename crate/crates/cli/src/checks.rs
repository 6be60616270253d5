//! Cross-module invariants evaluated by `unicent check`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use unicent::exactla::{compound, int_rank, rank, IntMatrix};
use unicent::homology::{betti_from_rows, cech_betti, nontrivial_pi0_witness};
use unicent::{
    build_cech_complex, build_center_diagram, center_of_levi, center_order, e_polynomial,
    invariant_form, jg_homology, killing_projection, poincare_from_purity, point_count_poly,
    total_euler, weyl_order, BettiTable, Error, LeviSet, RootDatum,
};

/// Rank bound for the checks that enumerate chains, minors or Weyl orbits.
const EXHAUSTIVE_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CheckItem {
    fn from_bool(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        CheckItem {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skip(name: &'static str, why: impl Into<String>) -> Self {
        CheckItem {
            name,
            status: Status::Skip,
            detail: why.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "status": self.status.as_str(), "detail": self.detail })
    }
}

fn minors_gcds(m: &IntMatrix) -> Vec<BigInt> {
    // d_k = gcd of all k x k minors, k = 1..=min(rows, cols)
    let (r, c) = (m.rows(), m.cols());
    (1..=r.min(c))
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in unicent::exactla::k_subsets(r, k) {
                for cols in unicent::exactla::k_subsets(c, k) {
                    g = g.gcd(&m.submatrix(&rows, &cols).det());
                }
            }
            g
        })
        .collect()
}

fn factors_from_minors(m: &IntMatrix) -> Vec<BigInt> {
    let d = minors_gcds(m);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for dk in d {
        if dk.is_zero() {
            break;
        }
        let f = &dk / &prev;
        if f > BigInt::one() {
            out.push(f);
        }
        prev = dk;
    }
    out
}

/// Size of the Weyl orbit of `ρ`, by breadth-first search over simple
/// reflections in fundamental-weight coordinates.
fn weyl_orbit_size(d: &RootDatum) -> usize {
    let a = d.cartan();
    let n = d.rank();
    let start: Vec<BigInt> = vec![BigInt::one(); n];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let c = v[i].clone();
            let w: Vec<BigInt> = (0..n).map(|j| &v[j] - &c * &a[(i, j)]).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.len()
}

pub fn run_checks(d: &RootDatum) -> Vec<CheckItem> {
    let n = d.rank();
    let all = d.all();
    let subsets = LeviSet::all_subsets(n);
    let centers: Vec<_> = subsets
        .iter()
        .map(|&s| center_of_levi(d, s).expect("subset of Π"))
        .collect();
    let z = center_order(d);
    let mut items = Vec::new();

    // exactla
    items.push(CheckItem::from_bool(
        "exactla.snf_divisibility_chain",
        centers.iter().all(|c| c.pi0.is_divisibility_chain()),
        format!("{} Levi sets", centers.len()),
    ));
    items.push(CheckItem::from_bool(
        "exactla.rank_nullity",
        subsets.iter().zip(&centers).all(|(s, c)| {
            let pairing = d.root_coords().select_rows(&s.indices());
            int_rank(&pairing) + c.cochar_basis.cols() == n && rank(&pairing.to_rat()) == s.len()
        }),
        "rank(pairing) + dim ker = n",
    ));
    if n <= EXHAUSTIVE_RANK {
        let bad = subsets.iter().zip(&centers).find(|(s, c)| {
            let pairing = d.root_coords().select_rows(&s.indices());
            factors_from_minors(&pairing) != c.pi0.factors()
        });
        items.push(CheckItem::from_bool(
            "exactla.snf_vs_minors",
            bad.is_none(),
            match bad {
                Some((s, _)) => format!("mismatch at S = {s}"),
                None => "invariant factors agree with determinantal divisors".into(),
            },
        ));
    } else {
        items.push(CheckItem::skip(
            "exactla.snf_vs_minors",
            format!("rank > {EXHAUSTIVE_RANK}"),
        ));
    }

    // rootdata
    items.push(CheckItem::from_bool(
        "rootdata.center_dimension",
        subsets
            .iter()
            .zip(&centers)
            .all(|(s, c)| c.dim == n - s.len()),
        "dim Z(L_S) = n - |S|",
    ));
    items.push(CheckItem::from_bool(
        "rootdata.cocharacters_annihilate_S",
        subsets.iter().zip(&centers).all(|(s, c)| {
            d.root_coords()
                .select_rows(&s.indices())
                .mul(&c.cochar_basis)
                .is_zero()
        }),
        "<alpha, lambda> = 0 for alpha in S",
    ));
    if d.is_adjoint() {
        items.push(CheckItem::from_bool(
            "rootdata.adjoint_pi0_trivial",
            centers.iter().all(|c| c.pi0.is_trivial()),
            "all S",
        ));
    } else {
        items.push(CheckItem::skip(
            "rootdata.adjoint_pi0_trivial",
            "not adjoint",
        ));
    }
    if d.is_simply_connected() {
        let det = d.cartan().det();
        items.push(CheckItem::from_bool(
            "rootdata.center_order_is_cartan_det",
            z == det,
            format!("|Z| = {z}, det A = {det}"),
        ));
    } else {
        items.push(CheckItem::skip(
            "rootdata.center_order_is_cartan_det",
            "not simply connected",
        ));
    }
    let form = invariant_form(d);
    items.push(CheckItem::from_bool(
        "rootdata.form_positive_definite",
        form.gram.is_symmetric() && form.is_positive_definite(),
        "symmetric, leading minors > 0",
    ));
    if n <= EXHAUSTIVE_RANK {
        let mut failure = None;
        let mut count = 0usize;
        'outer: for s3 in all.subsets() {
            for s2 in s3.subsets() {
                for s in s2.subsets() {
                    count += 1;
                    let p12 = killing_projection(d, s, s2).unwrap();
                    let p23 = killing_projection(d, s2, s3).unwrap();
                    let p13 = killing_projection(d, s, s3).unwrap();
                    if p23.mul(&p12) != p13 {
                        failure = Some(format!("{s} ⊆ {s2} ⊆ {s3}"));
                        break 'outer;
                    }
                }
            }
        }
        items.push(CheckItem::from_bool(
            "rootdata.projection_functoriality",
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{count} chains")),
        ));
        let mut bad = None;
        for s2 in all.subsets() {
            for s in s2.subsets() {
                let p = killing_projection(d, s, s2).unwrap();
                if rank(&p) != n - s2.len() {
                    bad = Some(format!("{s} -> {s2}"));
                }
            }
        }
        items.push(CheckItem::from_bool(
            "rootdata.projection_surjective",
            bad.is_none(),
            bad.unwrap_or_else(|| "all pairs".into()),
        ));
        let orbit = weyl_orbit_size(d);
        let w = weyl_order(d.cartan_type());
        items.push(CheckItem::from_bool(
            "rootdata.weyl_order_vs_orbit",
            BigInt::from(orbit) == w,
            format!("table {w}, orbit of rho {orbit}"),
        ));
    } else {
        for name in [
            "rootdata.projection_functoriality",
            "rootdata.projection_surjective",
            "rootdata.weyl_order_vs_orbit",
        ] {
            items.push(CheckItem::skip(name, format!("rank > {EXHAUSTIVE_RANK}")));
        }
    }

    // polycount
    let count = point_count_poly(d);
    items.push(CheckItem::from_bool(
        "polycount.monic_degree_2n",
        count.degree() == Some(2 * n) && count.leading_coefficient().is_some_and(|c| c.is_one()),
        count.to_string(),
    ));
    if d.is_adjoint() {
        let pure = count.coeffs().iter().enumerate().all(|(k, c)| {
            if k == 2 * n {
                c.is_one()
            } else {
                c.is_zero()
            }
        });
        items.push(CheckItem::from_bool(
            "polycount.adjoint_count_is_q^2n",
            pure,
            count.to_string(),
        ));
    } else {
        items.push(CheckItem::skip(
            "polycount.adjoint_count_is_q^2n",
            "not adjoint",
        ));
    }
    let at_one = count.eval(&BigInt::one());
    items.push(CheckItem::from_bool(
        "polycount.count_at_one_is_center_order",
        at_one == z,
        format!("P(1) = {at_one}, |Z| = {z}"),
    ));
    let e = e_polynomial(d);
    let e_one = e.eval(&BigInt::one());
    items.push(CheckItem::from_bool(
        "polycount.e_at_one_is_center_order",
        e_one == z && e.coeffs() == count.coeffs(),
        format!("E(1,1) = {e_one}"),
    ));
    let purity = poincare_from_purity(d);
    items.push(match &purity {
        Ok(p) => {
            let ok = (0..=2 * n).all(|k| {
                let ek = e.coeffs().get(k).cloned().unwrap_or_default();
                let pk = p.coeffs().get(4 * n - 2 * k).cloned().unwrap_or_default();
                ek == pk
            }) && p
                .coeffs()
                .iter()
                .enumerate()
                .all(|(j, c)| j % 2 == 0 || c.is_zero());
            CheckItem::from_bool("polycount.substitution_identity", ok, p.to_string())
        }
        Err(Error::NegativeCoefficient { .. }) => CheckItem::from_bool(
            "polycount.substitution_identity",
            e.coeffs().iter().any(|c| c.is_negative()),
            "purity prediction inadmissible",
        ),
        Err(err) => CheckItem::from_bool("polycount.substitution_identity", false, err.to_string()),
    });

    // homology
    let diagram = build_center_diagram(d);
    items.push(CheckItem::from_bool(
        "homology.diagram_functoriality",
        diagram.check_functoriality().is_ok(),
        "identities and all composites",
    ));
    let complex = build_cech_complex(&diagram);
    let witness = nontrivial_pi0_witness(d);
    match &complex {
        Ok(c) => {
            let fail = c.d_squared_failure();
            items.push(CheckItem::from_bool(
                "homology.d_squared_zero",
                fail.is_none(),
                match fail {
                    Some((w, p)) => format!("row {w}, degree {p}"),
                    None => format!("{} rows", c.rows.len()),
                },
            ));
            let chi = total_euler(c);
            items.push(CheckItem::from_bool(
                "homology.total_euler_zero",
                chi == 0,
                chi.to_string(),
            ));
            let betti = cech_betti(c);
            items.push(CheckItem::from_bool(
                "homology.betti_bounded_by_dimension",
                betti.total() <= c.total_dim(),
                format!("{} <= {}", betti.total(), c.total_dim()),
            ));
            let reversed = betti_from_rows(c, (0..c.rows.len()).rev().collect());
            items.push(CheckItem::from_bool(
                "homology.row_independence",
                reversed == betti,
                "rows in reverse order",
            ));
            if witness.is_none() {
                let sphere = BettiTable::sphere(2 * n - 1);
                items.push(CheckItem::from_bool(
                    "homology.boundary_is_sphere",
                    betti == sphere,
                    format!("{betti}"),
                ));
            } else {
                items.push(CheckItem::skip(
                    "homology.boundary_is_sphere",
                    "nontrivial proper pi0",
                ));
            }
        }
        Err(err) => {
            for name in [
                "homology.d_squared_zero",
                "homology.total_euler_zero",
                "homology.betti_bounded_by_dimension",
                "homology.row_independence",
                "homology.boundary_is_sphere",
            ] {
                items.push(CheckItem::from_bool(name, false, err.to_string()));
            }
        }
    }

    // assembly
    let assembled = jg_homology(d);
    let refusal_ok = match (&assembled, witness) {
        (Err(Error::NontrivialPi0(s)), Some(w)) => {
            *s == w && !center_of_levi(d, *s).unwrap().pi0.is_trivial() && *s != all
        }
        (Ok(_), None) => true,
        _ => false,
    };
    items.push(CheckItem::from_bool(
        "assembly.refusal_correctness",
        refusal_ok,
        match witness {
            Some(w) => format!("refused with witness {w}"),
            None => "no proper Levi center is disconnected".into(),
        },
    ));
    let intersection = unicent::intersection_number(d);
    items.push(CheckItem::from_bool(
        "assembly.intersection_positive",
        intersection.is_positive() && intersection.is_integer(),
        format!("|W|/|Z| = {intersection}"),
    ));
    match &assembled {
        Ok(r) => {
            let chi = r.betti.euler_characteristic();
            items.push(CheckItem::from_bool(
                "assembly.euler_consistency",
                BigInt::from(chi) == z && e_one == z,
                format!("chi = {chi}, |Z| = {z}, E(1,1) = {e_one}"),
            ));
            items.push(CheckItem::from_bool(
                "assembly.purity_match",
                r.purity_match,
                format!("{}", r.betti),
            ));
            items.push(CheckItem::from_bool(
                "assembly.odd_top_degree_vanishes",
                r.betti.get(2 * n - 1) == 0,
                format!("b_{} = {}", 2 * n - 1, r.betti.get(2 * n - 1)),
            ));
            let matches_poincare = purity.as_ref().is_ok_and(|p| {
                p.coeffs().len() == r.betti.as_slice().len()
                    && p.coeffs()
                        .iter()
                        .zip(r.betti.as_slice())
                        .all(|(c, &b)| *c == BigInt::from(b))
            });
            items.push(CheckItem::from_bool(
                "polycount.purity_equals_assembled_betti",
                matches_poincare,
                "all proper pi0 trivial",
            ));
        }
        Err(_) => {
            for name in [
                "assembly.euler_consistency",
                "assembly.purity_match",
                "assembly.odd_top_degree_vanishes",
                "polycount.purity_equals_assembled_betti",
            ] {
                items.push(CheckItem::skip(name, "assembly refused"));
            }
        }
    }

    // compound functoriality on composable diagram arrows
    if n <= EXHAUSTIVE_RANK {
        let mut ok = true;
        for ((s, s2), f) in diagram.arrows() {
            for s3 in LeviSet::all_subsets(n) {
                if s3 == all || !s2.is_subset(s3) {
                    continue;
                }
                let g = diagram.arrow(*s2, s3).unwrap();
                let gf = g.mul(f);
                for k in 0..=n - s.len() {
                    ok &= compound(&gf, k) == compound(g, k).mul(&compound(f, k));
                }
            }
        }
        items.push(CheckItem::from_bool(
            "exactla.compound_functoriality",
            ok,
            "composable diagram arrows, all k",
        ));
    } else {
        items.push(CheckItem::skip(
            "exactla.compound_functoriality",
            format!("rank > {EXHAUSTIVE_RANK}"),
        ));
    }

    items
}
