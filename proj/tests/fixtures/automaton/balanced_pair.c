void balanced_pair(int c)
{
	mutex_lock(&a);
	mutex_lock(&b);
	if (c)
		x = 1;
	mutex_unlock(&b);
	mutex_unlock(&a);
}
