// planted: reach line 9: superfluous semicolon after while
// The intended loop body is executed only once.

int pending;

void drain(void)
{
	int i = 0;
	while (i < pending);
		i = i + 1;
	pending = 0;
}
