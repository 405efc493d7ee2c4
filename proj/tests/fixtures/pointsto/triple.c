void triple(void)
{
	int x;
	int *p, *q;
	int **pp, **t;
	int ***ppp;

	p = &x;
	pp = &p;
	ppp = &pp;
	t = *ppp;
	q = *t;
}
