use std::ffi::{c_char, CStr};
use std::f64::consts::LN_2;
use std::path::Path;
use std::process::Command;
use std::ptr;

use fermicorr_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    unsafe {
        fc_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn spectrum_and_version() {
    let mut e = [0.0; 6];
    assert_eq!(unsafe { fc_dimer_spectrum(1.0, e.as_mut_ptr()) }, FcStatus::Ok);
    assert_eq!(e[1], 0.0);
    assert!((e[5] - e[0] - 2.0 * (0.25 + 4.0 * (-2.0f64).exp()).sqrt()).abs() < 1e-12);
    assert_eq!(unsafe { fc_dimer_spectrum(1.0, ptr::null_mut()) }, FcStatus::NullPointer);
    assert_eq!(unsafe { fc_dimer_spectrum(f64::NAN, e.as_mut_ptr()) }, FcStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    let v = unsafe { CStr::from_ptr(fc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn singlet_measures() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(fc_state_dissociated(0, &mut s), FcStatus::Ok);
        let mut modes = 0;
        assert_eq!(fc_state_modes(s, &mut modes), FcStatus::Ok);
        assert_eq!(modes, 4);
        let left = [0usize, 1];
        let mut x = 0.0;
        assert_eq!(fc_mode_correlation(s, left.as_ptr(), 2, 0, &mut x), FcStatus::Ok);
        assert!((x - 2.0 * LN_2).abs() < 1e-9);
        assert_eq!(fc_nonfreeness(s, &mut x), FcStatus::Ok);
        assert!((x - 4.0 * LN_2).abs() < 1e-9);
        assert_eq!(fc_quantum_nonfreeness(s, &mut x), FcStatus::Ok);
        assert!((x - 1.0).abs() < 1e-9);
        let cfg = fc_solver_config_new();
        assert_eq!(fc_solver_config_set(cfg, 8, 2, 1, 1e-9), FcStatus::Ok);
        assert_eq!(fc_solver_config_set(cfg, 0, 2, 1, 1e-9), FcStatus::InvalidArgument);
        assert_eq!(fc_mode_entanglement(s, left.as_ptr(), 2, 0, cfg, &mut x), FcStatus::Ok);
        assert!((x - LN_2).abs() < 1e-3);
        fc_solver_config_free(cfg);
        assert_eq!(fc_mode_correlation(s, left.as_ptr(), 2, 0, ptr::null_mut()), FcStatus::NullPointer);
        let bad = [0usize, 9];
        assert_eq!(fc_mode_correlation(s, bad.as_ptr(), 2, 0, &mut x), FcStatus::InvalidArgument);
        fc_state_free(s);
        fc_state_free(ptr::null_mut());
    }
}

#[test]
fn states_from_matrices() {
    unsafe {
        let mut re = [0.0; 16];
        re[0] = 0.5;
        re[5] = 0.5;
        let mut s = ptr::null_mut();
        assert_eq!(fc_state_from_matrix(2, re.as_ptr(), ptr::null(), &mut s), FcStatus::Ok);
        fc_state_free(s);
        re[5] = 0.7;
        assert_eq!(fc_state_from_matrix(2, re.as_ptr(), ptr::null(), &mut s), FcStatus::InvalidState);
        assert_eq!(fc_state_from_matrix(2, ptr::null(), ptr::null(), &mut s), FcStatus::NullPointer);
        let mut q = 0.0;
        assert_eq!(fc_quantum_nonfreeness(ptr::null(), &mut q), FcStatus::NullPointer);
        assert_eq!(fc_state_dissociated(5, &mut s), FcStatus::InvalidArgument);
    }
}

#[test]
fn thermal_quantities() {
    unsafe {
        let mut r = 0.0;
        assert_eq!(fc_critical_distance(FcPicture::Mode, FcMethod::Exact, 0.1, &mut r), FcStatus::Ok);
        assert!((r - 1.70).abs() < 0.03);
        assert_eq!(fc_critical_distance(FcPicture::Particle, FcMethod::LowT, 0.5, &mut r), FcStatus::InvalidArgument);
        let (mut i, mut rhs) = (0.0, 0.0);
        assert_eq!(fc_wolf_bound(0.1, 1.0, &mut i, &mut rhs), FcStatus::Ok);
        assert!(i > 0.0 && i <= rhs);
        let mut rho = ptr::null_mut();
        assert_eq!(fc_state_dimer_thermal(0.1, 1.0, &mut rho), FcStatus::Ok);
        let left = [0usize, 1];
        let mut e = 0.0;
        assert_eq!(fc_mode_entanglement(rho, left.as_ptr(), 2, 1, ptr::null(), &mut e), FcStatus::Ok);
        assert!(e > 1e-2);
        fc_state_free(rho);
        assert_eq!(fc_state_dimer_thermal(-1.0, 1.0, &mut rho), FcStatus::InvalidArgument);
        let mut n = 0;
        assert_eq!(fc_grid_len(c"0:6:0.05".as_ptr(), &mut n), FcStatus::Ok);
        assert_eq!(n, 121);
        assert_eq!(fc_grid_len(c"1:0".as_ptr(), &mut n), FcStatus::InvalidArgument);
    }
}

#[test]
fn generated_header_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fermicorr.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["fc_state_free", "fc_mode_entanglement", "FC_STATUS_BOUND_VIOLATION", "typedef struct FcState FcState"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success());
}
