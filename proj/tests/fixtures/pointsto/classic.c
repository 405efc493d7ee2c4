void classic(void)
{
	int x, y, z;
	int *a, *b, *c;
	int **pa;

	a = &x;
	b = &y;
	c = &z;
	pa = &a;
	*pa = b;
	c = a;
}
