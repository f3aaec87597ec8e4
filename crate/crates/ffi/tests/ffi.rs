use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use gtn_ffi::*;

const ALPHA: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn scenario(alpha: f64, t: f64) -> *mut GtnScenario {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gtn_scenario_new(alpha, 1.0, t, &mut s) }, GtnStatus::Ok);
    s
}

fn last_error() -> String {
    let p = gtn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn closed_form_measures() {
    let s = scenario(ALPHA, 1.0);
    let mut v = 0.0;
    unsafe {
        assert_eq!(gtn_gte(s, GtnReducedState::A_BI_CI, &mut v), GtnStatus::Ok);
        assert!((v - 0.731_058_578_630_004_9).abs() < 1e-12);
        assert_eq!(gtn_svetlichny(s, GtnReducedState::A_BI_CI, &mut v), GtnStatus::Ok);
        assert!((v - 4.135_491_827_151_002_5).abs() < 1e-12);
        assert_eq!(gtn_bell(s, GtnReducedState::BI_BII, &mut v), GtnStatus::Ok);
        assert!(v > 0.0 && v <= 2.0);
        assert_eq!(gtn_concurrence(s, GtnReducedState::A_BI, &mut v), GtnStatus::Ok);
        assert_eq!(v, 0.0);
        gtn_scenario_free(s);
    }
}

#[test]
fn wrong_arity_is_not_applicable() {
    let s = scenario(ALPHA, 1.0);
    let mut v = -1.0;
    unsafe {
        assert_eq!(gtn_svetlichny(s, GtnReducedState::BI_BII, &mut v), GtnStatus::NotApplicable);
        assert!(last_error().contains("three-qubit"));
        assert_eq!(gtn_concurrence(s, GtnReducedState::A_BI_CI, &mut v), GtnStatus::NotApplicable);
        assert_eq!(v, -1.0);
        gtn_scenario_free(s);
    }
}

#[test]
fn invalid_input_and_null_pointers() {
    let mut s = ptr::null_mut();
    let mut v = 0.0;
    unsafe {
        assert_eq!(gtn_scenario_new(1.5, 1.0, 1.0, &mut s), GtnStatus::InvalidParameter);
        assert!(s.is_null());
        assert_eq!(gtn_scenario_new(0.5, 1.0, 1.0, ptr::null_mut()), GtnStatus::NullPointer);
        assert_eq!(gtn_gte(ptr::null(), GtnReducedState::A_BI_CI, &mut v), GtnStatus::NullPointer);
        assert_eq!(gtn_hawking_temperature(-1.0, &mut v), GtnStatus::InvalidParameter);
        gtn_scenario_free(ptr::null_mut());
        gtn_density_free(ptr::null_mut());
    }
}

#[test]
fn temperature_helpers() {
    let mut v = 0.0;
    let mut exists = -1;
    unsafe {
        assert_eq!(gtn_hawking_temperature(1.0, &mut v), GtnStatus::Ok);
        assert!((v - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(gtn_critical_temperature(ALPHA, 1.0, &mut v, &mut exists), GtnStatus::Ok);
        assert_eq!(exists, 1);
        assert!((v - 1.134_592_657_1).abs() < 1e-8);
        assert_eq!(gtn_critical_temperature(0.3, 1.0, &mut v, &mut exists), GtnStatus::Ok);
        assert_eq!(exists, 0);

        let mut s = ptr::null_mut();
        assert_eq!(gtn_scenario_from_mass(ALPHA, 1.0, 0.1, &mut s), GtnStatus::Ok);
        let mut m = GtnMonogamy::default();
        assert_eq!(gtn_monogamy(s, &mut m), GtnStatus::Ok);
        assert_eq!(m.all_hold, 1);
        assert!(m.linear_residual < 1e-12 && m.ckw_min_slack >= 0.0);
        gtn_scenario_free(s);
    }
}

#[test]
fn density_handles() {
    let s = scenario(ALPHA, 0.8);
    let mut d = ptr::null_mut();
    let mut dim = 0usize;
    let mut v = 0.0;
    unsafe {
        assert_eq!(gtn_reduced_state(s, GtnReducedState::A_BI_CII, &mut d), GtnStatus::Ok);
        assert_eq!(gtn_density_dim(d, &mut dim), GtnStatus::Ok);
        assert_eq!(dim, 8);
        let (mut re, mut im) = (vec![0.0; 64], vec![0.0; 64]);
        assert_eq!(gtn_density_matrix(d, re.as_mut_ptr(), im.as_mut_ptr(), 63), GtnStatus::BufferTooSmall);
        assert_eq!(gtn_density_matrix(d, re.as_mut_ptr(), im.as_mut_ptr(), 64), GtnStatus::Ok);
        let trace: f64 = (0..8).map(|i| re[i * 9]).sum();
        assert!((trace - 1.0).abs() < 1e-12);
        assert!(im.iter().all(|x| x.abs() < 1e-15));

        assert_eq!(gtn_density_svetlichny_bruteforce(d, 8, 1, &mut v), GtnStatus::Ok);
        let mut closed = 0.0;
        assert_eq!(gtn_svetlichny(s, GtnReducedState::A_BI_CII, &mut closed), GtnStatus::Ok);
        assert!((v - closed).abs() < 1e-6);
        assert_eq!(gtn_density_chsh_max(d, &mut v), GtnStatus::InvalidState);
        gtn_density_free(d);

        assert_eq!(gtn_reduced_state(s, GtnReducedState::BI_BII, &mut d), GtnStatus::Ok);
        assert_eq!(gtn_density_chsh_max(d, &mut v), GtnStatus::Ok);
        let mut bell = 0.0;
        assert_eq!(gtn_bell(s, GtnReducedState::BI_BII, &mut bell), GtnStatus::Ok);
        assert!((v - bell).abs() < 1e-12);
        gtn_density_free(d);
        gtn_scenario_free(s);
    }
}

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_is_valid_c() {
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(crate_dir().join("include/gtn.h"))
        .status()
        .expect("C compiler");
    assert!(status.success());
}

#[test]
fn c_program_links_against_static_library() {
    let deps: PathBuf = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libgtn_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("gtn_c_api");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror"])
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c_api.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
