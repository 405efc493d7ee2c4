void double_ptr(void)
{
	int x, y;
	int *a, *b;
	int **pa, **pb, **pc;

	a = &x;
	b = &y;
	pa = &a;
	pb = &b;
	pc = pa;
	pc = pb;
	*pc = a;
}
