use std::sync::Arc;

use charcorr::corr::Method;
use charcorr::experiment::{
    census, fmt_g, frac, histogram, histogram_range, legendre_pair, reproduce, scan_shifts, scatter_pair,
    ExperimentSpec, Figure, PairSpec, Scale, Table,
};
use charcorr::par::with_threads;
use charcorr::{DecimationKind, Error, Exec, FiniteField};

fn reduced(figure: Figure) -> ExperimentSpec {
    ExperimentSpec { scale: Scale::Reduced, ..ExperimentSpec::new(figure) }
}

fn rms_fit(table: &Table) -> f64 {
    let m = table.column("cdf_measured").unwrap();
    let a = table.column("cdf_asymptotic").unwrap();
    (m.iter().zip(&a).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / m.len() as f64).sqrt()
}

#[test]
fn number_formatting() {
    assert_eq!(fmt_g(0.0), "0");
    assert_eq!(fmt_g(1.0), "1");
    assert_eq!(fmt_g(0.25), "0.25");
    assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
    assert_eq!(fmt_g(-4.0 / 3.0), "-1.33333333333");
    assert_eq!(fmt_g(1e-7), "1e-07");
    assert_eq!(fmt_g(123456789012345.0), "1.23456789012e+14");
}

#[test]
fn histograms() {
    let bins = histogram(&[0.5, 0.5], 0.1).unwrap();
    assert_eq!(bins.len(), 1);
    assert_eq!(bins[0].count, 2);
    assert!(matches!(histogram(&[1.0], 0.0), Err(Error::BadBinWidth(_))));
    let (bins, below, above) = histogram_range(&[0.1, 0.6, 0.6049, 0.605, 1.6, 2.0], 0.6, 1.6, 0.005).unwrap();
    assert_eq!(bins.len(), 200);
    assert_eq!((below, above), (1, 2));
    assert_eq!(bins[0].count, 2);
    assert_eq!(bins[1].count, 1);
    assert!(bins.windows(2).all(|w| w[0].lo < w[1].lo));
}

#[test]
fn scan_rows_are_ordered_and_deduplicated() {
    let pair = scatter_pair(Figure::Lester, Scale::Reduced, None).unwrap();
    let rows = scan_shifts(&pair, &[9, 3, 5, 3], Method::Auto, Exec::Parallel).unwrap();
    assert_eq!(rows.iter().map(|r| r.shift).collect::<Vec<_>>(), [3, 5, 9]);
    let generic = scan_shifts(&pair, &[3, 5, 9], Method::Generic, Exec::Sequential).unwrap();
    assert_eq!(rows, generic);
}

#[test]
fn fast_scan_matches_direct_sums_for_legendre_pairs() {
    let pair = legendre_pair(Figure::Percy, Scale::Reduced).unwrap();
    let grid: Vec<i64> = (0..127).step_by(9).collect();
    let fast = scan_shifts(&pair, &grid, Method::Auto, Exec::Parallel).unwrap();
    let direct = scan_shifts(&pair, &grid, Method::Generic, Exec::Parallel).unwrap();
    for (a, b) in fast.iter().zip(&direct) {
        assert_eq!(a.shift, b.shift);
        assert!((a.cdf - b.cdf).abs() < 1e-9 * b.cdf);
        assert!((a.df_f - b.df_f).abs() < 1e-9 * b.df_f);
    }
}

#[test]
fn row_counts_and_headers() {
    let t = reproduce(&ExperimentSpec::new(Figure::Lester)).unwrap();
    assert_eq!(t.rows.len(), 511);
    assert_eq!(t.header, ["fractional_shift_sum", "cdf_measured", "cdf_asymptotic"]);
    let min = t.column("cdf_measured").unwrap().into_iter().fold(f64::INFINITY, f64::min);
    assert!((min - 5.0 / 6.0).abs() < 0.03);

    let t = reproduce(&reduced(Figure::Monica)).unwrap();
    assert_eq!(t.rows.len(), 127);
    assert_eq!(t.header.len(), 5);

    let t = reproduce(&reduced(Figure::Andrew)).unwrap();
    assert_eq!(t.header, ["bin_lo", "bin_hi", "count"]);
    assert_eq!(t.rows.len(), 200);
    let t = reproduce(&reduced(Figure::Bartholomew)).unwrap();
    assert_eq!(t.header.len(), 5);
    for row in &t.rows {
        assert_eq!(row[2], row[3] + row[4]);
    }
}

#[test]
fn figure_names_parse() {
    for f in Figure::ALL {
        assert_eq!(f.name().parse::<Figure>().unwrap(), f);
    }
    assert!(matches!("nosuch".parse::<Figure>(), Err(Error::UnknownFigure(_))));
}

#[test]
fn output_is_identical_across_thread_counts() {
    for figure in [Figure::Lester, Figure::Laura, Figure::Monica, Figure::Andrew] {
        let spec = reduced(figure);
        let one = with_threads(1, || reproduce(&spec).unwrap().to_csv());
        let three = with_threads(3, || reproduce(&spec).unwrap().to_csv());
        let seq = reproduce(&ExperimentSpec { exec: Exec::Sequential, ..spec.clone() }).unwrap().to_csv();
        assert_eq!(one, three, "{}", figure.name());
        assert_eq!(one, seq, "{}", figure.name());
    }
}

#[test]
fn census_seeds() {
    let field = FiniteField::first_irreducible(2, 6).unwrap();
    let a = census(&field, Some(100), 1, Exec::Parallel).unwrap();
    let b = census(&field, Some(100), 1, Exec::Sequential).unwrap();
    let c = census(&field, Some(100), 2, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.len(), 6 * 5);
    assert!(a.iter().all(|blk| blk.cdfs.len() == 100));
}

/// All census values of a field, sorted.
fn sorted_census(field: &FiniteField) -> Vec<f64> {
    let mut v: Vec<f64> = census(field, None, 0, Exec::Parallel)
        .unwrap()
        .into_iter()
        .flat_map(|b| b.cdfs)
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn census_does_not_depend_on_the_modulus() {
    let a = FiniteField::binary_255();
    let b = FiniteField::first_irreducible(2, 8).unwrap();
    assert_ne!(a.modulus(), b.modulus());
    let (va, vb) = (sorted_census(&a), sorted_census(&b));
    assert_eq!(va.len(), 240 * 255 * 255);
    let worst = va.iter().zip(&vb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn reversing_pairs_form_the_satellite_peak() {
    let field = FiniteField::first_irreducible(2, 7).unwrap();
    let blocks = census(&field, None, 0, Exec::Parallel).unwrap();
    let modal = |want: bool| {
        let v: Vec<f64> = blocks
            .iter()
            .filter(|b| (b.kind == DecimationKind::Reversing) == want)
            .flat_map(|b| b.cdfs.iter().copied())
            .collect();
        let (bins, _, _) = histogram_range(&v, 0.6, 1.6, 0.02).unwrap();
        let top = bins.iter().max_by_key(|b| b.count).unwrap();
        0.5 * (top.lo + top.hi)
    };
    let rev = modal(true);
    let other = modal(false);
    assert!((0.78..0.9).contains(&rev), "{rev}");
    assert!((0.95..1.05).contains(&other), "{other}");
}

#[test]
fn curve_fit_improves_with_length() {
    let small = rms_fit(&reproduce(&reduced(Figure::Lester)).unwrap());
    let large = rms_fit(&reproduce(&ExperimentSpec::new(Figure::Lester)).unwrap());
    assert!(large < small, "{large} vs {small}");
}

#[test]
fn pair_fractional_sums() {
    let field = Arc::new(FiniteField::binary_255());
    let pair = PairSpec::Additive { field, d: -1, f_shift: 10, len: 255 };
    let (f, g, sum) = pair.pair(300).unwrap();
    assert_eq!((f.len(), g.len()), (255, 255));
    assert!((sum - frac(310.0 / 255.0)).abs() < 1e-15);
    assert!(scatter_pair(Figure::Monica, Scale::Full, None).is_err());
    assert!(scatter_pair(Figure::Lester, Scale::Full, Some(7)).is_err());
    assert!(legendre_pair(Figure::Lester, Scale::Full).is_err());
}
