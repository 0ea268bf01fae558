mod props;

fn check(r: props::Outcome) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn field_axioms() {
    check(props::field_axioms());
}

#[test]
fn embedding_is_a_ring_map() {
    check(props::embedding_is_a_ring_map());
}

#[test]
fn numeric_matches_exact() {
    check(props::numeric_matches_exact());
}

#[test]
fn substitute_linear_is_composition() {
    check(props::substitute_linear_is_composition());
}

#[test]
fn reid_tai_pairing() {
    check(props::reid_tai_pairing());
}

#[test]
fn reduced_basis_is_unique() {
    check(props::reduced_basis_is_unique());
}

#[test]
fn twist_is_multiplicative() {
    check(props::twist_is_multiplicative());
}

#[test]
fn euler_vector_in_kernel() {
    check(props::euler_vector_in_kernel());
}
