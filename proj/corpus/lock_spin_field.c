// planted: lock line 43: variable q->head accessed without lock &q->lock held
// The ring head is advanced under the spinlock except in the fast path.

struct spinlock {
	int raw;
};

struct ring {
	struct spinlock lock;
	int head;
	int tail;
};

void ring_push(struct ring *q, int v)
{
	spin_lock(&q->lock);
	q->head = q->head + 1;
	q->tail = v;
	spin_unlock(&q->lock);
}

void ring_pop(struct ring *q)
{
	spin_lock(&q->lock);
	q->head = q->head - 1;
	spin_unlock(&q->lock);
}

void ring_reset(struct ring *q)
{
	spin_lock(&q->lock);
	q->head = 0;
	q->tail = 0;
	spin_unlock(&q->lock);
}

void ring_skip(struct ring *q, int n)
{
	spin_lock(&q->lock);
	q->head = q->head + n;
	spin_unlock(&q->lock);
	if (n > 8)
		q->head = 0;
}
