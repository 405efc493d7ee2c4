void take(void)
{
	mutex_lock(&q);
}

void give(int c)
{
	if (c)
		mutex_unlock(&q);
}
