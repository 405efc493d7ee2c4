// planted: reach line 12: superfluous semicolon after else
// The else branch is empty and the assignment always runs.

int mode;

void set_mode(int fast)
{
	int m;

	if (fast)
		m = 2;
	else;
		m = 1;
	mode = m;
}
