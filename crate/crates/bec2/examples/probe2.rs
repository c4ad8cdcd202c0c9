fn main() {
    let a = bec2::exact::wigner_row(40, -40, 1e-8).unwrap();
    println!("i=0..4: {:?}", &a.amps[0..4]);
    let pi = std::f64::consts::PI;
    let mut worst_all = 0.0f64;
    for &(two_j, two_k0) in &[
        (40u32, 8i64), (41, -11), (40, 40), (40, 0), (40, -40), (40, 38), (41, 41), (41, -41),
    ] {
        for &theta in &[1e-8, 1e-4, 0.01, 0.5, 1.5707963267948966, 3.0, 3.13, pi - 1e-4, pi - 1e-8] {
            let a = bec2::exact::wigner_row(two_j, two_k0, theta).unwrap();
            let b = bec2::exact::wigner_row_expgen(two_j, two_k0, theta).unwrap();
            let worst = a.amps.iter().zip(b.amps.iter()).map(|(x, y)| (x - y).abs()).fold(0.0f64, f64::max);
            worst_all = worst_all.max(worst);
            if worst > 1e-9 { println!("FAIL two_j={two_j} k0={two_k0} theta={theta:e}: {worst:.3e}"); }
        }
    }
    println!("worst over all = {worst_all:.3e}");
}
