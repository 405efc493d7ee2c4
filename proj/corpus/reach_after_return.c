// planted: reach line 16: unreachable code in release_buffer
// Cleanup placed after an early return never runs.

struct buf {
	int refs;
	int pinned;
};

int release_buffer(struct buf *b)
{
	if (b->refs > 1) {
		b->refs = b->refs - 1;
		return 1;
	}
	return 0;
	b->pinned = 0;
	b->refs = 0;
	return 0;
}
