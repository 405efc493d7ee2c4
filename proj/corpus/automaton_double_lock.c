// planted: automaton line 13: double lock of &queue_lock
// Lock re-taken inside a retry loop without releasing it first.

struct mutex queue_lock;
int queue_len;

int queue_drain(int tries)
{
	int i = 0;

	mutex_lock(&queue_lock);
	while (queue_len > 0) {
		mutex_lock(&queue_lock);
		queue_len = queue_len - 1;
		if (i > tries)
			break;
		i = i + 1;
	}
	mutex_unlock(&queue_lock);
	return i;
}
