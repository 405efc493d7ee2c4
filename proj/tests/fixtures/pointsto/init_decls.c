void init_decls(void)
{
	int x, y;
	int *p = &x;
	int *q = &y;
	int *r = p;
	int **rr = &r;

	*rr = q;
}
