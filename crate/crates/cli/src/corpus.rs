//! Datasets bundled into the binary so that `verify all` works out of the
//! box and output never depends on the working directory.

pub const BUNDLED: &[(&str, &str)] = &[
    (
        "cp2_circle",
        include_str!("../../../datasets/cp2_circle.json"),
    ),
    ("simplex", include_str!("../../../datasets/simplex.json")),
    ("segment", include_str!("../../../datasets/segment.json")),
    ("square", include_str!("../../../datasets/square.json")),
    (
        "cp1_in_cp2_x1",
        include_str!("../../../datasets/cp1_in_cp2_x1.json"),
    ),
    (
        "cp1_in_cp2_x2",
        include_str!("../../../datasets/cp1_in_cp2_x2.json"),
    ),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(id, _)| *id == name)
        .map(|(_, text)| *text)
}
