//! Bundled run configurations, one per reproduced plot.

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        /// `(name, JSON text)` pairs, sorted by name.
        pub const PRESETS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../figures/", $name, ".json")))),*
        ];
    };
}

presets!(
    "local_krylov_L7",
    "local_krylov_L7_chaotic",
    "mixed_tfim_lanczos_L13_chaotic",
    "mixed_tfim_lanczos_L13_integrable",
    "mixed_tfim_latetime_L7_chaotic",
    "mixed_tfim_latetime_L7_integrable",
    "mixed_xxz_L12_eps0",
    "mixed_xxz_L12_eps0.5",
    "nonlocal_krylov_L7_chaotic",
    "nonlocal_krylov_L7_integrable",
    "nonlocal_lanczos_L12_chaotic",
    "nonlocal_lanczos_L12_integrable",
    "rstat_L13_chaotic",
    "rstat_L13_integrable",
    "rstat_L13_nonlocal_gamma0.5_chaotic",
    "rstat_L13_nonlocal_gamma0.5_integrable",
    "rstat_mixed_tfim_L13",
    "sff_L11_chaotic",
    "sff_L11_integrable",
    "sff_L11_nonlocal_gamma0.5",
    "sff_L11_nonlocal_gamma0.5_chaotic",
);

pub fn list_presets() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

pub fn preset_text(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
