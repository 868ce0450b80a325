use super::Adjacency;

/// Read access to the upper-left `revealed x revealed` block of a graph.
///
/// The design engine only ever sees a graph through this view. Any read
/// outside the revealed block panics.
#[derive(Debug)]
pub struct RevealedView<'a, G: ?Sized> {
    graph: &'a G,
    revealed: usize,
}

impl<'a, G: Adjacency + ?Sized> RevealedView<'a, G> {
    pub fn new(graph: &'a G) -> Self {
        RevealedView { graph, revealed: 0 }
    }

    pub fn revealed(&self) -> usize {
        self.revealed
    }

    pub fn total(&self) -> usize {
        self.graph.n()
    }

    /// Extends the revealed block to `size` subjects. The block never shrinks.
    pub fn reveal(&mut self, size: usize) {
        assert!(
            size <= self.graph.n(),
            "cannot reveal {size} of {} subjects",
            self.graph.n()
        );
        assert!(size >= self.revealed, "revealed block cannot shrink");
        self.revealed = size;
    }

    #[inline]
    fn check(&self, i: usize, len: usize) {
        assert!(
            i < self.revealed && len <= self.revealed,
            "read of row {i} (prefix {len}) outside the revealed {0}x{0} block",
            self.revealed
        );
    }

    pub fn entry(&self, i: usize, j: usize) -> G::Value {
        self.check(i, j + 1);
        self.graph.entry(i, j)
    }

    pub fn row_prefix(&self, i: usize, len: usize, out: &mut Vec<G::Value>) {
        self.check(i, len);
        self.graph.row_prefix(i, len, out)
    }

    pub fn row_prefix_dot_signs(&self, i: usize, len: usize, signs: &[i8]) -> G::Value {
        self.check(i, len);
        self.graph.row_prefix_dot_signs(i, len, signs)
    }
}
