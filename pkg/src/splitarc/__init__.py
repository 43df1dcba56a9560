"""Strong arc decompositions and good branching pairs of split digraphs."""
