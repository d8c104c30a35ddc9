use pykiselman::pykiselman;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    pyo3::append_to_inittab!(pykiselman);
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        let source = std::ffi::CString::new(code).unwrap();
        py.run(&source, Some(&globals), None)
            .inspect_err(|e| e.display(py))
            .expect("python snippet runs");
    });
}

#[test]
fn bindings_round_trip() {
    run(r#"
import pykiselman as k
m = k.KiselmanMonoid(3)
assert len(m.elements()) == 18
assert m.multiply([1], [2]) == [1, 2]
assert m.multiply([1, 2], [1]) == [2, 1]
s = k.SetSequence([[1], [1, 2], [3]])
assert s.is_monotone()
assert k.psi_inv(k.psi(s)) == s
assert len({k.psi(t) for t in k.monotone_sequences(2)}) == 15
f = k.Endomorphism.from_sequence(s)
g = k.Endomorphism.identity(3)
assert g.compose(f) == f.compose(g) == f
assert k.closed_count(4, 3) == k.brute_count(4, 3)
try:
    k.SetSequence([[4], [1], [2]])
    raise AssertionError("out of range index accepted")
except k.KiselmanError:
    pass
"#);
}
