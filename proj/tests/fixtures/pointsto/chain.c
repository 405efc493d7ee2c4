void chain(void)
{
	int x;
	int *a, *b, *c, *d, *e;

	a = &x;
	b = a;
	c = b;
	d = c;
	e = d;
}
