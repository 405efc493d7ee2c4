// planted: thread line 20: lock order cycle: inode->i_lock <- sb->s_lock <- inode->i_lock
// Lock keys are whole member expressions; the two paths disagree on order.

struct mutex {
	int owner;
};

struct super {
	struct mutex s_lock;
};

struct inode_s {
	struct mutex i_lock;
	int dirty;
};

void write_inode(struct super *sb, struct inode_s *inode)
{
	mutex_lock(&sb->s_lock);
	mutex_lock(&inode->i_lock);
	inode->dirty = 0;
	mutex_unlock(&inode->i_lock);
	mutex_unlock(&sb->s_lock);
}

void evict_inode(struct super *sb, struct inode_s *inode)
{
	mutex_lock(&inode->i_lock);
	mutex_lock(&sb->s_lock);
	inode->dirty = 1;
	mutex_unlock(&sb->s_lock);
	mutex_unlock(&inode->i_lock);
}
