use std::ffi::{CStr, CString};
use std::ptr;

use wignerneg_ffi::*;

fn new_field(spec: &str) -> *mut WnField {
    let spec = CString::new(spec).unwrap();
    let mut field = ptr::null_mut();
    let status = unsafe { wn_state_new(spec.as_ptr(), &mut field) };
    assert_eq!(status, WnStatus::Ok, "{}", last_error());
    assert!(!field.is_null());
    field
}

fn last_error() -> String {
    let p = wn_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

#[test]
fn single_photon_through_the_c_abi() {
    let field = new_field("number:n=1");
    let (mut neg, mut n, mut integral) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(wn_log_negativity(field, &mut neg), WnStatus::Ok);
        assert_eq!(wn_mean_photon(field, &mut n), WnStatus::Ok);
        assert_eq!(wn_field_integral(field, &mut integral), WnStatus::Ok);
        wn_field_free(field);
    }
    assert!((neg - 0.35435).abs() < 1e-3);
    assert!((n - 1.0).abs() < 1e-9);
    assert!((integral - 1.0).abs() < 1e-9);
}

#[test]
fn samples_and_dims_agree() {
    let spec = CString::new("on:N=2,are=0.5").unwrap();
    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(
            wn_state_new_on_grid(spec.as_ptr(), 6.0, 61, -5.0, 7.0, 49, &mut field),
            WnStatus::Ok
        );
        let (mut nq, mut np) = (0usize, 0usize);
        assert_eq!(wn_field_dims(field, &mut nq, &mut np), WnStatus::Ok);
        assert_eq!((nq, np), (61, 49));
        let mut bounds = [0.0; 4];
        assert_eq!(wn_field_bounds(field, bounds.as_mut_ptr()), WnStatus::Ok);
        assert_eq!(bounds, [-6.0, 6.0, -5.0, 7.0]);
        let mut small = vec![0.0; 10];
        assert_eq!(
            wn_field_samples(field, small.as_mut_ptr(), small.len()),
            WnStatus::BufferTooSmall
        );
        let mut buf = vec![0.0; nq * np];
        assert_eq!(
            wn_field_samples(field, buf.as_mut_ptr(), buf.len()),
            WnStatus::Ok
        );
        assert!(buf.iter().any(|&w| w < 0.0));
        wn_field_free(field);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bogus = CString::new("bogus:x=1").unwrap();
    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(wn_state_new(bogus.as_ptr(), &mut field), WnStatus::Parse);
        assert!(field.is_null());
        assert!(last_error().contains("bogus"));

        let undefined = CString::new("pmod:sign=-1,s=0").unwrap();
        assert_eq!(
            wn_state_new(undefined.as_ptr(), &mut field),
            WnStatus::Parse
        );
        assert!(last_error().contains("zero vector"), "{}", last_error());

        assert_eq!(wn_state_new(ptr::null(), &mut field), WnStatus::NullPointer);
        let ok = CString::new("number:n=0").unwrap();
        assert_eq!(
            wn_state_new(ok.as_ptr(), ptr::null_mut()),
            WnStatus::NullPointer
        );

        let mut out = 0.0;
        assert_eq!(
            wn_log_negativity(ptr::null(), &mut out),
            WnStatus::NullPointer
        );
        wn_field_free(ptr::null_mut());

        let msg = CStr::from_ptr(wn_status_str(WnStatus::Unnormalized))
            .to_str()
            .unwrap();
        assert_eq!(msg, "field not normalized");
    }
}

#[test]
fn fidelity_and_grid_mismatch() {
    let a = new_field("number:n=1");
    let b = new_field("pmod:sign=1,s=0,theta=0");
    let c = new_field("cubic:gamma=0.05,s=0.2");
    let mut f = 0.0;
    unsafe {
        assert_eq!(wn_fidelity(a, b, &mut f), WnStatus::Ok);
        assert!((f - 1.0).abs() < 1e-6);
        assert_eq!(wn_fidelity(a, c, &mut f), WnStatus::GridMismatch);
        for p in [a, b, c] {
            wn_field_free(p);
        }
    }
}

#[test]
fn distillation_summary() {
    let input = new_field("cubic:gamma=0.05,P=0,s=0.6");
    let mut summary = WnDistillSummary::default();
    unsafe {
        assert_eq!(wn_distill(input, 0.95, 0.05, &mut summary), WnStatus::Ok);
        assert_eq!(
            wn_distill(input, 1.5, 0.05, &mut summary.clone()),
            WnStatus::InvalidArgument
        );
        wn_field_free(input);
    }
    assert!((summary.p_suc - 0.05).abs() < 1e-3);
    assert!(summary.post_neg > summary.ini_neg);
    assert!(summary.window_lo < summary.window_hi);
}

#[test]
fn csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("w.csv").to_str().unwrap()).unwrap();
    let field = new_field("number:n=2");
    unsafe {
        assert_eq!(wn_field_save_csv(field, path.as_ptr()), WnStatus::Ok);
        wn_field_free(field);
    }
    let text = std::fs::read_to_string(path.to_str().unwrap()).unwrap();
    assert!(text.starts_with("q,p,w\n"));
}
