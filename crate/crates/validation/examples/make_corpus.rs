//! Regenerates the bundled test corpora under `tests/data/`.
//!
//! ```text
//! cargo run -p bidi-validation --example make_corpus
//! ```

use std::path::Path;

use bidi_core::generators::*;
use bidi_core::graph::Graph;

fn write(dir: &Path, name: &str, g: &Graph) {
    std::fs::create_dir_all(dir).unwrap();
    g.save_edge_list(dir.join(format!("{name}.el"))).unwrap();
}

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");

    let corpus = data.join("corpus10");
    write(&corpus, "grid_20x20", &grid(20, 20));
    write(&corpus, "path_300", &path(300));
    write(&corpus, "cycle_300", &cycle(300));
    write(&corpus, "ladder_2x150", &grid(2, 150));
    write(&corpus, "star_200", &star(200));
    write(&corpus, "bintree_d8", &complete_tree(2, 8));
    write(&corpus, "bridged_trees_3_5_4", &bridged_tree_pair(3, 5, 4).0);
    write(&corpus, "regular3_600", &random_regular(600, 3, 11));
    write(&corpus, "regular5_600", &random_regular(600, 5, 12));
    write(&corpus, "sparse_random_600", &random_connected(600, 600, 13));

    let grid_like = data.join("separation/grid_like");
    write(&grid_like, "grid_25x25", &grid(25, 25));
    write(&grid_like, "cycle_400", &cycle(400));
    write(&grid_like, "ladder_2x200", &grid(2, 200));

    let expander_like = data.join("separation/expander_like");
    write(&expander_like, "regular3_1500", &random_regular(1500, 3, 21));
    write(&expander_like, "regular5_1500", &random_regular(1500, 5, 22));
    write(&expander_like, "sparse_random_1500", &random_connected(1500, 1500, 23));
}
