// planted: reach line 15: unreachable code in count_ready
// A statement following break inside the loop body.

int count_ready(int *slots, int n)
{
	int i;
	int ready = 0;

	for (i = 0; i < n; i = i + 1) {
		if (slots[i] == 0)
			continue;
		if (slots[i] < 0) {
			ready = -1;
			break;
			ready = 0;
		}
		ready = ready + 1;
	}
	return ready;
}
