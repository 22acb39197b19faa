#![allow(dead_code)]

use upq_core::datum::datum_from_mu;
use upq_core::theta::assemble_inf_char;
use upq_core::weights::rho;
use upq_core::{Block, BlockShape, HalfRational, KTypeWeight, LambdaDatum, NuVector, Signature, ThetaDatum, Vector};

pub fn h(twice: i64) -> HalfRational {
    HalfRational::half(twice)
}

pub fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

pub fn nu(twice: &[i64]) -> NuVector {
    NuVector(twice.iter().map(|&x| h(x)).collect())
}

pub fn block(shape: BlockShape, r: usize, s: usize, twice_gamma: i64) -> Block {
    Block::new(shape, r, s, h(twice_gamma))
}

pub fn mu(s: &str) -> KTypeWeight {
    s.parse().unwrap()
}

pub fn halves(twice: &[i64]) -> Vector {
    Vector::from_halves(twice)
}

pub fn large_nu() -> ThetaDatum {
    use BlockShape::*;
    let d = LambdaDatum::new(
        sig(5, 4),
        vec![
            block(ParallelogramUp, 1, 1, 2),
            block(Rectangle, 1, 1, 1),
            block(TrapezoidWideTop, 2, 1, 0),
            block(Rectangle, 1, 1, -1),
        ],
    )
    .unwrap();
    ThetaDatum::new(d, vec![nu(&[0]), nu(&[1]), nu(&[0]), nu(&[7])]).unwrap()
}

pub fn u43_case_a() -> ThetaDatum {
    use BlockShape::*;
    let d = LambdaDatum::new(
        sig(4, 3),
        vec![block(TrapezoidWideTop, 2, 1, 2), block(Rectangle, 1, 1, 1), block(Rectangle, 1, 1, -1)],
    )
    .unwrap();
    ThetaDatum::new(d, vec![nu(&[0]), nu(&[2]), nu(&[0])]).unwrap()
}

/// The datum of the trivial representation: lowest K-type zero and Λ = ρ.
/// The single block with `min(r,s) > 0` absorbs every ρ coordinate the others miss.
pub fn trivial(p: usize, q: usize) -> ThetaDatum {
    let s = sig(p, q);
    let datum = datum_from_mu(&KTypeWeight::zero(s), s).unwrap();
    let mut rest: Vec<HalfRational> = rho(s.n()).0;
    let mut take = |x: HalfRational| {
        let at = rest.iter().position(|y| *y == x).expect("content is a rho coordinate");
        rest.remove(at);
    };
    for b in &datum.blocks {
        for _ in 0..b.r.abs_diff(b.s) {
            take(b.gamma);
        }
    }
    let wide: Vec<usize> = (0..datum.blocks.len()).filter(|&i| datum.blocks[i].min_rs() > 0).collect();
    let mut nus = vec![NuVector::default(); datum.blocks.len()];
    if let [i] = wide[..] {
        let b = &datum.blocks[i];
        rest.sort_unstable_by(|x, y| y.cmp(x));
        nus[i] = NuVector(rest[..b.min_rs()].iter().map(|x| *x - b.gamma).collect());
    } else {
        assert!(wide.is_empty(), "expected at most one wide block");
    }
    let td = ThetaDatum::new(datum, nus).unwrap();
    assert_eq!(assemble_inf_char(&td).coords(), &rho(s.n()));
    td
}
