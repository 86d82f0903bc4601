// scratch: micro-benchmarks for the lane kernels

#[test]
fn bench_lanes() {
    const N: usize = 2_000_000;
    let xs: Vec<f64> = (0..N).map(|i| 100.0 + (i as f64) * 0.13).collect();
    let asin_in: Vec<f64> = (0..N).map(|i| -0.9 + 1.8 * (i as f64) / N as f64).collect();
    let exp_in: Vec<f64> = (0..N).map(|i| -3.0 + 3.5 * (i as f64) / N as f64).collect();

    // sqrt baseline
    let t = std::time::Instant::now();
    let mut acc = 0.0f64;
    for chunk in xs.chunks_exact(8) {
        let mut out = [0.0f64; 8];
        for l in 0..8 { out[l] = chunk[l].sqrt(); }
        for l in 0..8 { acc += out[l]; }
    }
    println!("sqrt8:    {:7.1} ns/8  (acc {acc:.3})", t.elapsed().as_nanos() as f64 / (N / 8) as f64);

    // libm sin_cos baseline
    let t = std::time::Instant::now();
    let mut acc = 0.0f64;
    for &x in xs.iter().take(N/4) {
        let (s, c) = x.sin_cos();
        acc += s + c;
    }
    println!("libm sincos: {:7.1} ns/1 (acc {acc:.3})", t.elapsed().as_nanos() as f64 / (N/4) as f64);

    let t = std::time::Instant::now();
    let mut acc = 0.0f64;
    for &x in asin_in.iter().take(N/4) { acc += x.asin(); }
    println!("libm asin: {:7.1} ns/1 (acc {acc:.3})", t.elapsed().as_nanos() as f64 / (N/4) as f64);

    let t = std::time::Instant::now();
    let mut acc = 0.0f64;
    for &x in exp_in.iter().take(N/4) { acc += x.exp(); }
    println!("libm exp:  {:7.1} ns/1 (acc {acc:.3})", t.elapsed().as_nanos() as f64 / (N/4) as f64);
}
