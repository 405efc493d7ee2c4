// planted: reach line 14: unreachable code in init_table
// An unconditional goto jumps over the initialisation.

int table[4];
int ready;

int init_table(int n)
{
	int i = 0;

	if (n > 4)
		return -1;
	goto done;
	table[i] = 0;
	ready = 1;
done:
	return ready;
}
