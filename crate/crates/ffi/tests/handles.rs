use std::ffi::CString;
use std::ptr;

use abelcs_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let status = unsafe { abelcs_last_error(buf.as_mut_ptr().cast(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, AbelcsStatus::Ok);
    let end = buf.iter().position(|&b| b == 0).unwrap();
    String::from_utf8(buf[..end].to_vec()).unwrap()
}

#[test]
fn null_arguments_are_reported() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(abelcs_diagram_parse(ptr::null(), &mut d), AbelcsStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(abelcs_diagram_evaluate(ptr::null(), &mut s), AbelcsStatus::NullPointer);
        assert_eq!(last_error(), "null handle");
        abelcs_diagram_free(ptr::null_mut());
        abelcs_scalar_free(ptr::null_mut());
        abelcs_operator_free(ptr::null_mut());
        assert_eq!(abelcs_diagram_level(ptr::null()), 0);
    }
}

#[test]
fn errors_are_cleared_by_success() {
    unsafe {
        let bad = CString::new("N 2\ncup 1 at 0\n").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(abelcs_diagram_parse(bad.as_ptr(), &mut d), AbelcsStatus::Parse);
        assert!(last_error().contains("open strands"));
        let mut s = ptr::null_mut();
        assert_eq!(abelcs_scalar_t_power(2, 1, &mut s), AbelcsStatus::Ok);
        assert_eq!(last_error(), "");
        let mut small = [0u8; 4];
        let mut needed = 0usize;
        assert_eq!(
            abelcs_scalar_to_string(s, small.as_mut_ptr().cast(), small.len(), &mut needed),
            AbelcsStatus::BufferTooSmall
        );
        assert_eq!(needed, "N^{0} * (1 t)".len() + 1);
        abelcs_scalar_free(s);
    }
}

#[test]
fn fourier_entries_match_omega_up_to_scale() {
    unsafe {
        let word = CString::new("T[a1]+ T[b1]- T[a1]+").unwrap();
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(abelcs_fourier(4, 1, word.as_ptr(), &mut a), AbelcsStatus::Ok);
        assert_eq!(abelcs_fourier_omega(4, 1, word.as_ptr(), &mut b), AbelcsStatus::Ok);
        let mut eq = 0;
        assert_eq!(abelcs_operator_projectively_equal(a, b, &mut eq), AbelcsStatus::Ok);
        assert_eq!(eq, 1);
        assert_eq!(abelcs_operator_dim(a), 4);
        let bad = CString::new("T[a9]+").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(abelcs_fourier(4, 1, bad.as_ptr(), &mut c), AbelcsStatus::Algebra);
        assert!(c.is_null());
        abelcs_operator_free(a);
        abelcs_operator_free(b);
    }
}
