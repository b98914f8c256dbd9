"""Create benchmark run tables

Revision ID: 4b1d2e7a9c10
Revises: 
Create Date: 2026-10-18 09:00:00.000000

"""
from alembic import op
import sqlalchemy as sa


# revision identifiers, used by Alembic.
revision = '4b1d2e7a9c10'
down_revision = None
branch_labels = None
depends_on = None


def upgrade() -> None:
    op.create_table('bench_runs',
        sa.Column('id', sa.Integer(), nullable=False),
        sa.Column('run_name', sa.String(), nullable=False),
        sa.Column('created_at', sa.DateTime(), nullable=True, server_default=sa.func.now()),
        sa.Column('description', sa.Text(), nullable=True),
        sa.Column('config', sa.Text(), nullable=True),
        sa.Column('summary', sa.Text(), nullable=True),
        sa.PrimaryKeyConstraint('id')
    )
    op.create_index(op.f('ix_bench_runs_id'), 'bench_runs', ['id'], unique=False)
    op.create_index(op.f('ix_bench_runs_run_name'), 'bench_runs', ['run_name'], unique=True)

    op.create_table('bench_measurements',
        sa.Column('id', sa.Integer(), nullable=False),
        sa.Column('run_id', sa.Integer(), nullable=False),
        sa.Column('algorithm', sa.String(), nullable=False),
        sa.Column('n', sa.Integer(), nullable=False),
        sa.Column('k', sa.Integer(), nullable=True),
        sa.Column('range_size', sa.Integer(), nullable=False),
        sa.Column('seed', sa.BigInteger(), nullable=False),
        sa.Column('rep', sa.Integer(), nullable=False),
        sa.Column('status', sa.String(), nullable=False),
        sa.Column('elapsed_us', sa.BigInteger(), nullable=False),
        sa.Column('result_size', sa.Integer(), nullable=False),
        sa.ForeignKeyConstraint(['run_id'], ['bench_runs.id'], ),
        sa.PrimaryKeyConstraint('id')
    )
    op.create_index(op.f('ix_bench_measurements_id'), 'bench_measurements', ['id'], unique=False)
    op.create_index(op.f('ix_bench_measurements_run_id'), 'bench_measurements', ['run_id'], unique=False)


def downgrade() -> None:
    op.drop_index(op.f('ix_bench_measurements_run_id'), table_name='bench_measurements')
    op.drop_index(op.f('ix_bench_measurements_id'), table_name='bench_measurements')
    op.drop_table('bench_measurements')
    op.drop_index(op.f('ix_bench_runs_run_name'), table_name='bench_runs')
    op.drop_index(op.f('ix_bench_runs_id'), table_name='bench_runs')
    op.drop_table('bench_runs')
