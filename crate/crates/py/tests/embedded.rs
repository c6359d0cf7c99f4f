use std::ffi::CString;

use pyo3::prelude::*;
use pyclebsch::pyclebsch;

fn run(code: &str) {
    let code = CString::new(code).unwrap();
    Python::with_gil(|py| {
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(pyclebsch);
    run(r#"
import pyclebsch as pc
g = pc.Group("cyclic:3")
assert g.order == 3 and g.dims == [1, 1, 1]
assert g.cartan_inverse() == [["2/3", "1/3"], ["1/3", "2/3"]]
assert [p for _, p in pc.Group("2T").mckay()] == [True, True]
assert pc.Group("2I").hsop() == [12, 20]
assert pc.kostka_foulkes("2,2", "1,1,1,1") == "q^2 + q^4"
assert pc.principal_specialization("1,1") == "q / (1 - q - q^2 + q^3)"
assert pc.macdonald_qq("2", "1,1") == "q"
assert len(pc.Graph("affine:E8")) == 9
try:
    pc.kronecker("2", "1,1", "3")
    raise AssertionError("size mismatch accepted")
except ValueError:
    pass
"#);
}
