//! Stored matrices, their ranks under surgery, and the degree tables.

use penner::catalog::{
    self, crosscap_augment, degree_set, degree_set_plus, format_set, puncture_augment, teich_dim, CrosscapVariant,
    PunctureVariant, SurfaceSpec,
};
use penner::spectral::rank_exact;

fn main() -> penner::Result<()> {
    for e in catalog::entries() {
        println!("{:<10} {:<9} n = {:<3} rank {}", e.id, e.surface.to_string(), e.omega.n(), rank_exact(&e.omega));
    }

    let w = catalog::catalog_get("N31-rank4")?.omega;
    for v in [CrosscapVariant::E, CrosscapVariant::ED1, CrosscapVariant::ED1D2] {
        println!("crosscap {v:?}: rank {}", rank_exact(&crosscap_augment(&w, 1, 4, v)?));
    }
    for v in [PunctureVariant::D, PunctureVariant::DE] {
        println!("puncture {v:?}: rank {}", rank_exact(&puncture_augment(&w, 1, v)?));
    }

    let surfaces = [
        SurfaceSpec::orientable(2, 0),
        SurfaceSpec::orientable(1, 3),
        SurfaceSpec::orientable(4, 3),
        SurfaceSpec::nonorientable(3, 1)?,
        SurfaceSpec::nonorientable(5, 0)?,
        SurfaceSpec::nonorientable(3, 0)?,
    ];
    for s in surfaces {
        match degree_set(&s) {
            Ok(d) => {
                let alt = d.alternative.as_ref().map(|a| format!(" or {}", format_set(a))).unwrap_or_default();
                println!(
                    "{s}: dim {}  D = {}{alt}  D+ = {}",
                    teich_dim(&s)?,
                    format_set(&d.degrees),
                    format_set(&degree_set_plus(&s)?)
                );
            }
            Err(e) => println!("{s}: {e}"),
        }
    }
    Ok(())
}
