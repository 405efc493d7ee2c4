void diamond(int flag)
{
	int x, y;
	int *p, *q, *r;

	if (flag)
		p = &x;
	else
		p = &y;
	q = p;
	r = &x;
}
