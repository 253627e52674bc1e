use jumplab::geometry::RectifiableSet;
use jumplab::measure::RadonMeasure;
use jumplab::operators::{double_layer_transform, ExtrapolationConfig};
use jumplab::vec3::Vec3;
use std::time::Instant;

fn main() {
    let m = RadonMeasure::hausdorff(RectifiableSet::sphere(Vec3::ZERO, 1.0));
    let cfg = ExtrapolationConfig::for_diameter(2.0);
    let quad = cfg.quad();
    for (label, theta) in [("pole", 1e-9f64), ("mid", 1.17f64)] {
        let x = Vec3::new(theta.sin(), 0.0, theta.cos());
        for k in [0, 8, 12, 16, 19] {
            let t = cfg.eps0 * cfg.ratio.powi(k);
            let y = x.scale(1.0 + t);
            let t0 = Instant::now();
            let r = double_layer_transform(&m, y, 0.25 * t, &quad);
            println!(
                "{label} R+ t={t:.3e} v={:+.9e} err={:.2e} conv={} cells={} {:?}",
                r.value.x(), r.error_bound, r.converged, r.cells, t0.elapsed()
            );
        }
        for k in [0, 8, 16, 19] {
            let eps = cfg.eps0 * cfg.ratio.powi(k);
            let t0 = Instant::now();
            let r = double_layer_transform(&m, x, eps, &quad);
            println!(
                "{label} pv eps={eps:.3e} v={:+.9e} err={:.2e} conv={} cells={} {:?}",
                r.value.x(), r.error_bound, r.converged, r.cells, t0.elapsed()
            );
        }
    }
}
