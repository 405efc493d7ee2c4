// planted: reach line 8: superfluous semicolon after if
// planted: reach line 10: unreachable code in check_limit

int limit;

int check_limit(int value)
{
	if (value > limit);
		return -1;
	limit = value;
	return 0;
}
