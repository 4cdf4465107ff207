//! The end-to-end verification suite: ten fixed scenarios, each checking
//! one headline property of the library against an independent oracle or
//! an exact invariant, with a wall-clock budget. The integration test
//! target and the `verify-all` subcommand both run exactly this list.

use crate::centralizer::{
    centralizer_basis, integral_closure_probe, nc_root, recognize_generator,
};
use crate::field::{Field, Fp64, Ring};
use crate::freepoly::{commutator, standard_polynomial, FreePoly};
use crate::genmat::{
    charpoly, pi_test, random_matrix, spectral_probe, ut_eval, word_trace, Matrix, PiVerdict,
};
use crate::linalg;
use crate::oracle;
use crate::word::Word;
use crate::words::{bergman_projection, inf_cmp, AlphabetOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

pub struct Criterion {
    pub name: &'static str,
    pub budget_secs: u64,
    pub run: fn() -> Result<String, String>,
}

/// Every acceptance scenario, in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { name: "centralizer-recovery", budget_secs: 240, run: c01_centralizer_recovery },
        Criterion { name: "word-power-chain", budget_secs: 10, run: c02_word_power_chain },
        Criterion { name: "kernel-of-pi", budget_secs: 5, run: c03_kernel_of_pi },
        Criterion { name: "charpoly-oracle", budget_secs: 10, run: c04_charpoly_oracle },
        Criterion { name: "prime-order-spectra", budget_secs: 30, run: c05_prime_order_spectra },
        Criterion { name: "trace-invariance", budget_secs: 5, run: c06_trace_invariance },
        Criterion { name: "integral-closure", budget_secs: 60, run: c07_integral_closure },
        Criterion { name: "triangular-reduction", budget_secs: 5, run: c08_triangular_reduction },
        Criterion { name: "bergman-projection", budget_secs: 2, run: c09_bergman_projection },
        Criterion { name: "t-ideal-stability", budget_secs: 10, run: c10_t_ideal_stability },
    ]
}

const P31: u64 = 2147483647;

fn xy_gens(field: Fp64) -> (FreePoly<Fp64>, FreePoly<Fp64>) {
    (FreePoly::gen(field, 2, 0), FreePoly::gen(field, 2, 1))
}

fn c01_centralizer_recovery() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let (x, y) = xy_gens(p);
    let xyx = &(&x * &y) * &x;
    let xy = &x * &y;
    let cases = [
        (x.pow(2), x.clone()),
        (&x + &y, &x + &y),
        (xyx.clone(), xyx.clone()),
        (xy.clone(), xy.clone()),
    ];
    for (f, want_h) in cases {
        let text = f.canonical_text();
        let basis =
            centralizer_basis(&f, 8).map_err(|e| format!("solver failed on {text}: {e}"))?;
        let dims = basis.dims();
        let dense = oracle::centralizer_dims_dense(&f, 8);
        if dims != dense {
            return Err(format!("f = {text}: solver dims {dims:?} != dense oracle {dense:?}"));
        }
        let report = recognize_generator(basis);
        if !report.recognized {
            return Err(format!("f = {text}: centralizer not recognized as k[h]"));
        }
        match report.h {
            Some(ref h) if *h == want_h => {}
            other => {
                return Err(format!(
                    "f = {text}: h = {:?}, wanted {}",
                    other.map(|h| h.canonical_text()),
                    want_h.canonical_text()
                ))
            }
        }
    }
    Ok("4 generators recovered, dims match dense oracle at D=8".into())
}

fn c02_word_power_chain() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let trials = 100_000u64;
    for t in 0..trials {
        let s = rng.gen_range(1..=3usize);
        let ord = AlphabetOrder::natural(s);
        let draw = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=8usize);
            Word::from_letters(
                (0..len).map(|_| rng.gen_range(0..s as u8)).collect::<Vec<_>>(),
            )
        };
        let u = draw(&mut rng);
        let v = draw(&mut rng);
        let fast = inf_cmp(&u, &v, &ord);
        let slow = oracle::inf_cmp_by_long_prefix(&u, &v, &ord);
        if fast != slow {
            return Err(format!("trial {t}: inf_cmp disagrees with long-prefix oracle"));
        }
        let uv = u.concat(&v);
        let vu = v.concat(&u);
        let links = [
            inf_cmp(&u, &uv, &ord),
            inf_cmp(&uv, &vu, &ord),
            inf_cmp(&vu, &v, &ord),
        ];
        let ok = match fast {
            Ordering::Greater => links.iter().all(|&c| c == Ordering::Greater),
            Ordering::Equal => links.iter().all(|&c| c == Ordering::Equal),
            Ordering::Less => links.iter().all(|&c| c == Ordering::Less),
        };
        if !ok {
            return Err(format!(
                "trial {t}: chain violated for u, uv, vu, v with u^inf vs v^inf = {fast:?}"
            ));
        }
    }
    Ok(format!("{trials} random pairs: chain holds, oracle agrees"))
}

fn c03_kernel_of_pi() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let s4 = standard_polynomial(p, 4);
    let report = pi_test(&s4, 2, 50, 7, P31).map_err(|e| e.to_string())?;
    if report.verdict != PiVerdict::Identity {
        return Err("S4 flagged NonIdentity at n=2".into());
    }
    let f2 = Fp64::new(2).unwrap();
    let s4_mod2 = standard_polynomial(f2, 4);
    if oracle::exhaustive_pi_check(&s4_mod2, 2).is_some() {
        return Err("exhaustive F2 oracle found a nonzero S4 evaluation".into());
    }
    let (x, y) = xy_gens(p);
    let comm = commutator(&x, &y);
    let report = pi_test(&comm, 2, 50, 7, P31).map_err(|e| e.to_string())?;
    if report.verdict != PiVerdict::NonIdentity {
        return Err("[x,y] not separated from the kernel".into());
    }
    let witness = report.witness.ok_or("NonIdentity verdict without a witness")?;
    let image = crate::genmat::eval_fp(&comm, &witness);
    if image.is_zero() {
        return Err("stored witness does not actually separate [x,y]".into());
    }
    Ok("S4 identity at n=2 (sampled + exhaustive F2), [x,y] witnessed nonidentity".into())
}

fn c04_charpoly_oracle() -> Result<String, String> {
    let f7 = Fp64::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    for t in 0..100u32 {
        let n = rng.gen_range(1..=5usize);
        let m = random_matrix(&f7, n, &mut rng);
        let cp = charpoly(&m);
        if cp != oracle::charpoly_cofactor(&m) {
            return Err(format!("F7 trial {t}: charpoly disagrees with cofactor oracle"));
        }
        check_trace_det(&f7, &m, &cp).map_err(|e| format!("F7 trial {t}: {e}"))?;
    }
    let q = crate::field::Rationals;
    for t in 0..100u32 {
        let n = rng.gen_range(1..=5usize);
        let mut m = Matrix::zero(q, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, q.sample_elem(&mut rng));
            }
        }
        let cp = charpoly(&m);
        if cp != oracle::charpoly_cofactor(&m) {
            return Err(format!("rational trial {t}: charpoly disagrees with cofactor oracle"));
        }
        check_trace_det(&q, &m, &cp).map_err(|e| format!("rational trial {t}: {e}"))?;
    }
    Ok("100 F7 + 100 rational matrices, n <= 5: Berkowitz == cofactor, trace/det agree".into())
}

fn check_trace_det<K: Field>(
    field: &K,
    m: &Matrix<K>,
    cp: &crate::unipoly::UniPoly<K>,
) -> Result<(), String> {
    let n = m.n();
    let want_tr = field.neg(&m.trace());
    if cp.coeff(n - 1) != want_tr {
        return Err("subleading coefficient is not -trace".into());
    }
    let det = oracle::det_cofactor(m);
    let want_det = if n.is_multiple_of(2) { det } else { field.neg(&det) };
    if cp.coeff(0) != want_det {
        return Err("constant coefficient is not (-1)^n det".into());
    }
    Ok(())
}

fn c05_prime_order_spectra() -> Result<String, String> {
    let q = 65537u64;
    let fq = Fp64::new(q).unwrap();
    let f = FreePoly::gen(fq, 1, 0);
    let mut notes = Vec::new();
    for n in [2usize, 3, 5] {
        let report = spectral_probe(&f, n, 200, 0xC5, q).map_err(|e| e.to_string())?;
        if !report.irreducible_found {
            return Err(format!("n = {n}: no irreducible specialization in 200 trials"));
        }
        if report.squarefree_count * 10 < report.trials * 9 {
            return Err(format!(
                "n = {n}: squarefree fraction {}/{} below 0.9",
                report.squarefree_count, report.trials
            ));
        }
        notes.push(format!("n={n}: squarefree {}/{}", report.squarefree_count, report.trials));
    }
    Ok(notes.join(", "))
}

fn c06_trace_invariance() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    let trials = 1000u32;
    for t in 0..trials {
        let n = rng.gen_range(1..=4usize);
        let mats: Vec<_> = (0..2).map(|_| random_matrix(&p, n, &mut rng)).collect();
        let len = rng.gen_range(1..=6usize);
        let w = Word::from_letters((0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
        let cut = rng.gen_range(0..=len);
        let rotated = w.suffix(cut).concat(&w.prefix(cut));
        if word_trace(&w, &mats) != word_trace(&rotated, &mats) {
            return Err(format!("trial {t}: cyclic rotation changed the trace"));
        }
        let (b, b_inv) = loop {
            let cand = random_matrix(&p, n, &mut rng);
            let rows: Vec<Vec<u64>> = (0..n)
                .map(|i| (0..n).map(|j| *cand.entry(i, j)).collect())
                .collect();
            if let Some(inv_rows) = linalg::invert(&p, &rows) {
                break (cand, Matrix::from_rows(p, inv_rows));
            }
        };
        let conjugated: Vec<_> = mats.iter().map(|a| b.mul(a).mul(&b_inv)).collect();
        if word_trace(&w, &mats) != word_trace(&w, &conjugated) {
            return Err(format!("trial {t}: conjugation changed the trace"));
        }
    }
    Ok(format!("{trials} trials: cyclic + conjugation invariance exact"))
}

fn c07_integral_closure() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let (x, y) = xy_gens(p);
    let cases = [(x.pow(2), 8usize), (&(&x * &y) * &x, 12usize)];
    for (f, d) in &cases {
        let text = f.canonical_text();
        let rep = integral_closure_probe(f, *d, 100, 0xC7).map_err(|e| e.to_string())?;
        if rep.membership_ok != rep.trials
            || rep.roots_found != rep.trials
            || rep.roots_in_centralizer != rep.trials
            || rep.round_trips_ok != rep.trials
        {
            return Err(format!(
                "f = {text}: closure probe counts {}/{}/{}/{} of {}",
                rep.membership_ok,
                rep.roots_found,
                rep.roots_in_centralizer,
                rep.round_trips_ok,
                rep.trials
            ));
        }
        if rep.negatives_rejected != rep.negative_trials {
            return Err(format!("f = {text}: a spoiled power slipped into the centralizer"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x707);
    let round_trips = 1000u32;
    for t in 0..round_trips {
        let nterms = rng.gen_range(1..=4usize);
        let mut g = FreePoly::zero(p, 2);
        for _ in 0..nterms {
            let len = rng.gen_range(0..=3usize);
            let w =
                Word::from_letters((0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
            g.add_term(w, p.sample(&mut rng));
        }
        let k = rng.gen_range(2..=3u32);
        let gk = g.pow(k);
        if gk.is_zero() {
            continue;
        }
        let root = nc_root(&gk, k)
            .map_err(|e| format!("round-trip {t}: {e}"))?
            .ok_or_else(|| format!("round-trip {t}: no root found for an exact power"))?;
        if root.pow(k) != gk {
            return Err(format!("round-trip {t}: recovered root does not reproduce the power"));
        }
    }
    Ok(format!("2 closure probes x 100 trials, {round_trips} root round-trips"))
}

fn c08_triangular_reduction() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    for t in 0..50u32 {
        let n = rng.gen_range(2..=6usize);
        let nterms = rng.gen_range(1..=5usize);
        let mut f = FreePoly::zero(p, 2);
        for _ in 0..nterms {
            let len = rng.gen_range(1..=5usize);
            let w =
                Word::from_letters((0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
            f.add_term(w, p.sample(&mut rng));
        }
        if f.is_zero() {
            continue;
        }
        let image = ut_eval(&f, n, t as u64, P31).map_err(|e| e.to_string())?;
        if !p.is_zero(&image.trace()) {
            return Err(format!("trial {t}: constant-free image has nonzero trace"));
        }
    }
    for t in 0..50u32 {
        let n = rng.gen_range(2..=5usize);
        let deg = n + rng.gen_range(0..=2usize);
        let nterms = rng.gen_range(1..=4usize);
        let mut f = FreePoly::zero(p, 2);
        for _ in 0..nterms {
            let w =
                Word::from_letters((0..deg).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
            f.add_term(w, p.sample(&mut rng));
        }
        if f.is_zero() {
            continue;
        }
        let image = ut_eval(&f, n, 1000 + t as u64, P31).map_err(|e| e.to_string())?;
        if !image.is_zero() {
            return Err(format!(
                "trial {t}: homogeneous degree {deg} >= n = {n} image is nonzero"
            ));
        }
    }
    let (x, y) = xy_gens(p);
    let f = &x * &y;
    let hit = (0..20u64).any(|seed| {
        ut_eval(&f, 6, seed, P31).map(|img| !img.is_zero()).unwrap_or(false)
    });
    if !hit {
        return Err("xy vanished on strict upper-triangular matrices for all 20 seeds".into());
    }
    Ok("trace-free images, degree >= n annihilation, low degree survives".into())
}

fn c09_bergman_projection() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let (x, y) = xy_gens(p);
    let ord = AlphabetOrder::natural(2);
    let singletons = [x.pow(2), &x + &y];
    for f in &singletons {
        let proj = bergman_projection(std::slice::from_ref(f), &ord)
            .map_err(|e| e.to_string())?;
        if proj.images.iter().all(|im| im.degree().finite().unwrap_or(0) == 0) {
            return Err(format!(
                "projection of {} is entirely scalar",
                f.canonical_text()
            ));
        }
    }
    let basis = centralizer_basis(&x.pow(2), 4).map_err(|e| e.to_string())?;
    let members: Vec<FreePoly<Fp64>> = basis.elements().cloned().collect();
    let proj = bergman_projection(&members, &ord).map_err(|e| e.to_string())?;
    let nonconstant = proj
        .images
        .iter()
        .filter(|im| im.degree().finite().unwrap_or(0) >= 1)
        .count();
    if nonconstant == 0 {
        return Err("projection of the C(x^2) basis is entirely scalar".into());
    }
    Ok(format!(
        "projections nonconstant; C(x^2) basis sends {nonconstant}/{} members beyond k",
        members.len()
    ))
}

fn c10_t_ideal_stability() -> Result<String, String> {
    let p = Fp64::new(P31).unwrap();
    let s4 = standard_polynomial(p, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(0xC10);
    for t in 0..20u32 {
        let images: Vec<FreePoly<Fp64>> = (0..4)
            .map(|_| {
                let nterms = rng.gen_range(1..=3usize);
                let mut g = FreePoly::zero(p, 4);
                for _ in 0..nterms {
                    let len = rng.gen_range(0..=2usize);
                    let w = Word::from_letters(
                        (0..len).map(|_| rng.gen_range(0..4u8)).collect::<Vec<_>>(),
                    );
                    g.add_term(w, p.sample(&mut rng));
                }
                g
            })
            .collect();
        let substituted = s4.substitute(&images);
        if substituted.is_zero() {
            continue;
        }
        let report =
            pi_test(&substituted, 2, 20, 0xC10 + t as u64, P31).map_err(|e| e.to_string())?;
        if report.verdict != PiVerdict::Identity {
            return Err(format!(
                "endomorphism {t}: substituted S4 escaped the kernel at n = 2"
            ));
        }
    }
    Ok("20 random endomorphisms keep S4 inside the n=2 kernel".into())
}
