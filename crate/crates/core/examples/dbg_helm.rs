use chstep_core::datum::synth;
use chstep_core::liouville::schrodinger_potential;
use chstep_core::params::ProblemParams;

fn main() {
    let d = synth::y_step(1.0, 1.0, -25.0, 25.0, 0.005);
    let p = ProblemParams::new(1.0, 1.0, 0).unwrap();
    let sp = schrodinger_potential(&d, &p).unwrap();
    let mut worst = (0usize, 0.0f64);
    for j in 0..d.len() {
        let target = if sp.y[j] < 0.0 { -0.125 } else { 0.0 };
        if sp.y[j].abs() < 2.0 * d.h { continue; }
        let r = (sp.v[j] - target).abs();
        if r > worst.1 { worst = (j, r); }
    }
    let (j, r) = worst;
    println!("worst at j={} x={:.4} y={:.6} v={:.8} resid={:.3e}", j, d.x(j), sp.y[j], sp.v[j], r);
    println!("break at {:?}, x_glue expected node {}", d.breaks, d.x(d.breaks[0]));
    for jj in j.saturating_sub(3)..(j + 4).min(d.len()) {
        println!("  j={} x={:.4} y={:.6} m={:.8} v={:.8}", jj, d.x(jj), sp.y[jj], d.m0[jj], sp.v[jj]);
    }
    // tail check
    let ml = d.m0[0] - 1.0;
    let model_l = d.left_tail.coeff * (d.left_tail.rate * d.x0).exp();
    println!("left sample {:.8e} model {:.8e} rel {:.2e}", ml, model_l, (ml - model_l) / ml);
    // exact m from formula at x0 for comparison
    let ys = synth::YStep::new(1.0, 1.0);
    let y0 = ys.y_of_x(1.0, 1.0, d.x0);
    println!("y(x0) = {}, p = {:.10}, m_exact-c = {:.8e}", y0, ys.p_of_y(y0), 1.0*(ys.p_of_y(y0).powi(2)-1.0)-1.0);
}
