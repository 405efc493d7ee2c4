// planted: reach line 10: superfluous semicolon after for
// The loop body runs once after the loop finishes.

int total;

int sum(int *v, int n)
{
	int i;

	for (i = 0; i < n; i = i + 1);
		total = total + v[i];
	return total;
}
